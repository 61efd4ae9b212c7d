//! Term orders on `k[x, T]`.
//!
//! Variables are ordered by block first (`T_{m t_i} ≻ T_{n t_j}` when
//! `i > j`), then by grevlex on the generator monomial; every T-variable sits
//! above every x-variable unless the [`OrderVariant::XAboveT`] variant is
//! selected. The monomial order is lex over that variable sequence.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{SMonomial, TVariable, XMonomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderVariant {
    /// T-variables above x-variables.
    #[default]
    Convention,
    /// x-variables above T-variables, everything else unchanged.
    #[serde(rename = "x-above-T")]
    XAboveT,
}

impl std::str::FromStr for OrderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convention" => Ok(OrderVariant::Convention),
            "x-above-T" | "x-above-t" => Ok(OrderVariant::XAboveT),
            other => Err(Error::Input(format!("unknown order variant `{other}`"))),
        }
    }
}

/// A variable of `S = k[x, T]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    /// `x_i`, 1-based.
    X(usize),
    T(TVariable),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    /// x-variable indices (1-based), largest first.
    xorder: Vec<usize>,
    /// `rank[i - 1]` is the position of `x_i` in `xorder`.
    rank: Vec<usize>,
    variant: OrderVariant,
}

impl TermOrder {
    /// `x_1 ≻ x_2 ≻ … ≻ x_n`, T above x.
    pub fn convention(n: usize) -> Self {
        Self::build((1..=n).collect(), OrderVariant::Convention)
    }

    pub fn with_variant(n: usize, variant: OrderVariant) -> Self {
        Self::build((1..=n).collect(), variant)
    }

    pub fn new(xorder: Vec<usize>, variant: OrderVariant) -> Result<Self> {
        let n = xorder.len();
        let mut seen = vec![false; n];
        for &i in &xorder {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Input(format!(
                    "xorder {xorder:?} is not a permutation of 1..{n}"
                )));
            }
            seen[i - 1] = true;
        }
        Ok(Self::build(xorder, variant))
    }

    fn build(xorder: Vec<usize>, variant: OrderVariant) -> Self {
        let mut rank = vec![0; xorder.len()];
        for (pos, &i) in xorder.iter().enumerate() {
            rank[i - 1] = pos;
        }
        TermOrder {
            xorder,
            rank,
            variant,
        }
    }

    pub fn n(&self) -> usize {
        self.xorder.len()
    }

    pub fn xorder(&self) -> &[usize] {
        &self.xorder
    }

    pub fn variant(&self) -> OrderVariant {
        self.variant
    }

    /// Compares single x-variables: `x_i ≻ x_j` iff `i` precedes `j` in xorder.
    pub fn compare_x_var(&self, i: usize, j: usize) -> Ordering {
        self.rank[j - 1].cmp(&self.rank[i - 1])
    }

    /// Graded reverse lexicographic order on `k[x]` with respect to xorder.
    pub fn grevlex(&self, a: &XMonomial, b: &XMonomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        for &i in self.xorder.iter().rev() {
            let (ea, eb) = (a.exponent(i), b.exponent(i));
            if ea != eb {
                // the smaller power of the smallest variable wins
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    pub fn compare_t(&self, a: &TVariable, b: &TVariable) -> Ordering {
        a.block
            .cmp(&b.block)
            .then_with(|| self.grevlex(&a.gen, &b.gen))
    }

    pub fn compare_var(&self, a: &Variable, b: &Variable) -> Ordering {
        let above = match self.variant {
            OrderVariant::Convention => Ordering::Greater,
            OrderVariant::XAboveT => Ordering::Less,
        };
        match (a, b) {
            (Variable::X(i), Variable::X(j)) => self.compare_x_var(*i, *j),
            (Variable::T(s), Variable::T(t)) => self.compare_t(s, t),
            (Variable::T(_), Variable::X(_)) => above,
            (Variable::X(_), Variable::T(_)) => above.reverse(),
        }
    }

    /// The variables of `u` with multiplicity, largest first.
    pub fn descending_factors(&self, u: &SMonomial) -> Vec<Variable> {
        let mut vars: Vec<Variable> = u.t_factors().iter().cloned().map(Variable::T).collect();
        for (i, &e) in u.x.exponents().iter().enumerate() {
            for _ in 0..e {
                vars.push(Variable::X(i + 1));
            }
        }
        vars.sort_by(|a, b| self.compare_var(b, a));
        vars
    }

    /// Lex comparison of S-monomials over the variable sequence.
    ///
    /// Writing each monomial as its factors in descending order, lex is the
    /// lexicographic comparison of those sequences, a proper prefix being
    /// smaller.
    pub fn compare_s(&self, u: &SMonomial, v: &SMonomial) -> Ordering {
        let (fu, fv) = (self.descending_factors(u), self.descending_factors(v));
        for (a, b) in fu.iter().zip(&fv) {
            match self.compare_var(a, b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        fu.len().cmp(&fv.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: &[u32]) -> XMonomial {
        XMonomial::from_exponents(e.to_vec())
    }

    fn t(block: usize, e: &[u32]) -> TVariable {
        TVariable::new(block, x(e))
    }

    #[test]
    fn block_decides_first() {
        let o = TermOrder::convention(2);
        assert_eq!(o.compare_t(&t(2, &[0, 2]), &t(1, &[2, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_within_block() {
        let o = TermOrder::convention(3);
        assert_eq!(o.compare_t(&t(1, &[2, 0, 0]), &t(1, &[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare_t(&t(1, &[1, 1, 0]), &t(1, &[1, 1, 0])), Ordering::Equal);
        // x2^2 ≻ x1*x3 in grevlex
        assert_eq!(o.grevlex(&x(&[0, 2, 0]), &x(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_follows_xorder() {
        let o = TermOrder::new(vec![3, 2, 1], OrderVariant::Convention).unwrap();
        assert_eq!(o.grevlex(&x(&[0, 0, 2]), &x(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(o.compare_x_var(3, 1), Ordering::Greater);
    }

    #[test]
    fn lex_on_s_monomials() {
        let n = 2;
        let o = TermOrder::convention(n);
        let s = |xs: &[u32], ts: Vec<TVariable>| SMonomial::new(x(xs), ts);
        let u = s(&[0, 0], vec![t(1, &[2, 0]), t(1, &[0, 2])]);
        let v = s(&[0, 0], vec![t(1, &[1, 1]), t(1, &[1, 1])]);
        assert_eq!(o.compare_s(&u, &v), Ordering::Greater);

        let u = s(&[1, 0], vec![t(1, &[0, 1])]);
        let v = s(&[0, 1], vec![t(1, &[1, 0])]);
        assert_eq!(o.compare_s(&v, &u), Ordering::Greater);
        assert_eq!(o.compare_s(&u, &u), Ordering::Equal);
    }

    #[test]
    fn x_above_t_flips_the_tie() {
        let n = 2;
        let o = TermOrder::with_variant(n, OrderVariant::XAboveT);
        let u = SMonomial::new(x(&[1, 0]), vec![t(1, &[0, 1])]);
        let v = SMonomial::new(x(&[0, 1]), vec![t(1, &[1, 0])]);
        assert_eq!(o.compare_s(&u, &v), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_permutation() {
        assert!(TermOrder::new(vec![1, 1], OrderVariant::Convention).is_err());
        assert!(TermOrder::new(vec![0, 1], OrderVariant::Convention).is_err());
    }
}
