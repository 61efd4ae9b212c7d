//! Monomials of `k[x]`, `k[x,T]` and `k[x,t]`.
//!
//! The derived `Ord` implementations on these types are structural (used for
//! canonical storage and map keys). Term orders live in [`super::order`].

use std::fmt;

use serde::{Deserialize, Serialize};

/// A monomial `x^α` in `x_1..x_n`, stored as a dense exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XMonomial(Vec<u32>);

impl XMonomial {
    pub fn one(n: usize) -> Self {
        XMonomial(vec![0; n])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        XMonomial(exponents)
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        XMonomial(e)
    }

    /// `x_i^p` (1-based).
    pub fn power(n: usize, i: usize, p: u32) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = p;
        XMonomial(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// 1-based indices of the variables dividing this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn mul(&self, other: &XMonomial) -> XMonomial {
        XMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> XMonomial {
        let mut e = self.0.clone();
        e[i - 1] += 1;
        XMonomial(e)
    }

    /// `self / x_i`, or `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<XMonomial> {
        if self.0[i - 1] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i - 1] -= 1;
        Some(XMonomial(e))
    }

    /// `(x_to / x_from) · self`, or `None` when `x_from` does not divide.
    pub fn exchange(&self, from: usize, to: usize) -> Option<XMonomial> {
        self.div_var(from).map(|m| m.mul_var(to))
    }

    pub fn divides(&self, other: &XMonomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &XMonomial) -> Option<XMonomial> {
        if !other.divides(self) {
            return None;
        }
        Some(XMonomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// All monomials of degree `degree` in the given (1-based) variables,
    /// in no particular order.
    pub fn all_of_degree(n: usize, vars: &[usize], degree: u32) -> Vec<XMonomial> {
        fn go(
            vars: &[usize],
            left: u32,
            current: &mut Vec<u32>,
            out: &mut Vec<XMonomial>,
        ) {
            match vars.split_first() {
                None => {
                    if left == 0 {
                        out.push(XMonomial(current.clone()));
                    }
                }
                Some((&v, rest)) => {
                    let upto = if rest.is_empty() { left } else { 0 };
                    for e in (upto..=left).rev() {
                        current[v - 1] = e;
                        go(rest, left - e, current, out);
                    }
                    current[v - 1] = 0;
                }
            }
        }
        let mut out = Vec::new();
        if vars.is_empty() {
            if degree == 0 {
                out.push(XMonomial::one(n));
            }
            return out;
        }
        go(vars, degree, &mut vec![0; n], &mut out);
        out
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// The variable `T_{m t_j}` of `S = k[x, T]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TVariable {
    /// 1-based block index `j`.
    pub block: usize,
    pub gen: XMonomial,
}

impl TVariable {
    pub fn new(block: usize, gen: XMonomial) -> Self {
        TVariable { block, gen }
    }
}

impl fmt::Display for TVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},t{}]", self.gen, self.block)
    }
}

/// A monomial of `S = k[x, T]`.
///
/// The T-part is a multiset kept sorted structurally, so equality is
/// exponent-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SMonomial {
    pub x: XMonomial,
    t: Vec<TVariable>,
}

impl SMonomial {
    pub fn new(x: XMonomial, mut t: Vec<TVariable>) -> Self {
        t.sort();
        SMonomial { x, t }
    }

    pub fn one(n: usize) -> Self {
        SMonomial {
            x: XMonomial::one(n),
            t: Vec::new(),
        }
    }

    pub fn x_var(n: usize, i: usize) -> Self {
        SMonomial {
            x: XMonomial::var(n, i),
            t: Vec::new(),
        }
    }

    pub fn t_var(n: usize, t: TVariable) -> Self {
        SMonomial {
            x: XMonomial::one(n),
            t: vec![t],
        }
    }

    /// The T-factors with multiplicity.
    pub fn t_factors(&self) -> &[TVariable] {
        &self.t
    }

    pub fn degree(&self) -> u32 {
        self.x.degree() + self.t.len() as u32
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.t.is_empty()
    }

    pub fn mul(&self, other: &SMonomial) -> SMonomial {
        let mut t = self.t.clone();
        t.extend(other.t.iter().cloned());
        SMonomial::new(self.x.mul(&other.x), t)
    }

    /// `φ(u)`: replaces each `T_{m t_j}` by `m t_j`.
    pub fn phi(&self, r: usize) -> ImageMonomial {
        let mut x = self.x.clone();
        let mut t = vec![0; r];
        for v in &self.t {
            x = x.mul(&v.gen);
            t[v.block - 1] += 1;
        }
        ImageMonomial { x, t }
    }
}

/// A monomial `x^α t^β` of `k[x, t]`: the image of an S-monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ImageMonomial {
    pub x: XMonomial,
    /// Exponent of `t_j` at position `j - 1`.
    pub t: Vec<u32>,
}

impl ImageMonomial {
    pub fn one(n: usize, r: usize) -> Self {
        ImageMonomial {
            x: XMonomial::one(n),
            t: vec![0; r],
        }
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.t.iter().all(|&d| d == 0)
    }

    pub fn mul(&self, other: &ImageMonomial) -> ImageMonomial {
        ImageMonomial {
            x: self.x.mul(&other.x),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for ImageMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.x.is_one() {
            parts.push(self.x.to_string());
        }
        for (j, &d) in self.t.iter().enumerate() {
            match d {
                0 => {}
                1 => parts.push(format!("t{}", j + 1)),
                d => parts.push(format!("t{}^{}", j + 1, d)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
