//! A polynomial ring `k[x, T]` with its variables laid out by term order.
//!
//! Position 0 of a [`Mono`] holds the exponent of the largest variable, so
//! lex comparison of S-monomials is plain lexicographic comparison of the
//! exponent vectors and `Mono`'s derived `Ord` *is* the term order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{ImageMonomial, SMonomial, TVariable, XMonomial};
use super::order::{TermOrder, Variable};
use super::text;
use crate::error::{Error, Result};

/// Dense exponent vector over the variables of a [`Ring`], largest first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(Box<[u16]>);

impl Mono {
    pub fn one(len: usize) -> Self {
        Mono(vec![0; len].into_boxed_slice())
    }

    /// The variable at `pos` in a ring with `len` variables.
    pub fn var(len: usize, pos: usize) -> Self {
        let mut m = Mono::one(len);
        m.0[pos] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if !other.divides(self) {
            return None;
        }
        Some(Mono(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Calls `f` on every divisor of `self` whose degree lies in `lo..=hi`.
    pub fn for_each_divisor(&self, lo: u32, hi: u32, mut f: impl FnMut(&Mono)) {
        let support: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        let mut current = Mono::one(self.0.len());
        fn go(
            me: &Mono,
            support: &[usize],
            deg: u32,
            lo: u32,
            hi: u32,
            current: &mut Mono,
            f: &mut dyn FnMut(&Mono),
        ) {
            let Some((&i, rest)) = support.split_first() else {
                if deg >= lo {
                    f(current);
                }
                return;
            };
            for e in 0..=me.0[i] {
                if deg + e as u32 > hi {
                    break;
                }
                current.0[i] = e;
                go(me, rest, deg + e as u32, lo, hi, current, f);
            }
            current.0[i] = 0;
        }
        go(self, &support, 0, lo, hi, &mut current, &mut f);
    }
}

/// A nonzero binomial `plus - minus`, stored leading term first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Binomial {
    plus: Mono,
    minus: Mono,
}

impl Binomial {
    /// `±(a - b)` oriented so the larger term comes first; `None` if `a == b`.
    pub fn new(a: Mono, b: Mono) -> Option<Binomial> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(Binomial { plus: a, minus: b }),
            std::cmp::Ordering::Less => Some(Binomial { plus: b, minus: a }),
        }
    }

    /// Like [`Binomial::new`] but also reports the sign relating `a - b` to
    /// the stored binomial.
    pub fn oriented(a: Mono, b: Mono) -> Option<(i8, Binomial)> {
        let sign = if a > b { 1 } else { -1 };
        Binomial::new(a, b).map(|g| (sign, g))
    }

    pub fn lead(&self) -> &Mono {
        &self.plus
    }

    pub fn trail(&self) -> &Mono {
        &self.minus
    }

    pub fn degree(&self) -> u32 {
        self.plus.degree().max(self.minus.degree())
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        p.add_term(self.plus.clone(), BigInt::one());
        p.add_term(self.minus.clone(), -BigInt::one());
        p
    }
}

/// A formal integer combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly(BTreeMap<Mono, BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn term(m: Mono, c: BigInt) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.0.iter().next_back()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.0.iter().rev()
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Poly) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c · m · other`
    pub fn add_scaled(&mut self, c: &BigInt, m: &Mono, other: &Poly) {
        for (mm, cc) in &other.0 {
            self.add_term(mm.mul(m), c * cc);
        }
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            out.add_scaled(c, m, other);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.0.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// The polynomial ring `k[x, T]` of one instance under one term order.
#[derive(Clone, Debug)]
pub struct Ring {
    n: usize,
    r: usize,
    order: TermOrder,
    vars: Vec<Variable>,
    x_pos: Vec<usize>,
    t_pos: HashMap<TVariable, usize>,
    /// φ-image of each variable: generator x-part and block (0 for x-variables).
    images: Vec<(XMonomial, usize)>,
}

impl Ring {
    /// Builds the ring on `x_1..x_n` and the given T-variables.
    pub fn new(n: usize, r: usize, tvars: &[TVariable], order: TermOrder) -> Result<Ring> {
        if order.n() != n {
            return Err(Error::Input(format!(
                "term order is on {} x-variables, ring has {n}",
                order.n()
            )));
        }
        let mut vars: Vec<Variable> = tvars.iter().cloned().map(Variable::T).collect();
        vars.extend((1..=n).map(Variable::X));
        vars.sort_by(|a, b| order.compare_var(b, a));
        vars.dedup();
        let mut x_pos = vec![0; n];
        let mut t_pos = HashMap::new();
        let mut images = Vec::with_capacity(vars.len());
        for (pos, v) in vars.iter().enumerate() {
            match v {
                Variable::X(i) => {
                    x_pos[i - 1] = pos;
                    images.push((XMonomial::var(n, *i), 0));
                }
                Variable::T(t) => {
                    if t.block == 0 || t.block > r || t.gen.n() != n {
                        return Err(Error::Input(format!("variable {t} does not fit the ring")));
                    }
                    t_pos.insert(t.clone(), pos);
                    images.push((t.gen.clone(), t.block));
                }
            }
        }
        Ok(Ring {
            n,
            r,
            order,
            vars,
            x_pos,
            t_pos,
            images,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Variables, largest first.
    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn one(&self) -> Mono {
        Mono::one(self.vars.len())
    }

    pub fn is_x_position(&self, pos: usize) -> bool {
        self.images[pos].1 == 0
    }

    pub fn x_position(&self, i: usize) -> usize {
        self.x_pos[i - 1]
    }

    pub fn t_position(&self, t: &TVariable) -> Option<usize> {
        self.t_pos.get(t).copied()
    }

    pub fn x_var(&self, i: usize) -> Mono {
        self.var_at(self.x_pos[i - 1])
    }

    pub fn t_var(&self, t: &TVariable) -> Result<Mono> {
        let pos = self
            .t_position(t)
            .ok_or_else(|| Error::Input(format!("{t} is not a variable of this ring")))?;
        Ok(self.var_at(pos))
    }

    pub fn var_at(&self, pos: usize) -> Mono {
        let mut m = self.one();
        m.0[pos] = 1;
        m
    }

    pub fn variable(&self, v: &Variable) -> Result<Mono> {
        match v {
            Variable::X(i) if *i >= 1 && *i <= self.n => Ok(self.x_var(*i)),
            Variable::X(i) => Err(Error::Input(format!("x{i} is not a variable of this ring"))),
            Variable::T(t) => self.t_var(t),
        }
    }

    pub fn is_x_free(&self, m: &Mono) -> bool {
        self.x_pos.iter().all(|&p| m.0[p] == 0)
    }

    pub fn x_degree(&self, m: &Mono) -> u32 {
        self.x_pos.iter().map(|&p| m.0[p] as u32).sum()
    }

    pub fn encode(&self, u: &SMonomial) -> Result<Mono> {
        if u.x.n() != self.n {
            return Err(Error::Input(format!("monomial is not over {} x-variables", self.n)));
        }
        let mut m = self.one();
        for (i, &e) in u.x.exponents().iter().enumerate() {
            m.0[self.x_pos[i]] += e as u16;
        }
        for t in u.t_factors() {
            let pos = self
                .t_position(t)
                .ok_or_else(|| Error::Input(format!("{t} is not a variable of this ring")))?;
            m.0[pos] += 1;
        }
        Ok(m)
    }

    pub fn decode(&self, m: &Mono) -> SMonomial {
        let mut x = vec![0u32; self.n];
        let mut t = Vec::new();
        for (pos, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &self.vars[pos] {
                Variable::X(i) => x[i - 1] += e as u32,
                Variable::T(tv) => t.extend(std::iter::repeat_n(tv.clone(), e as usize)),
            }
        }
        SMonomial::new(XMonomial::from_exponents(x), t)
    }

    /// The factors of `m` with multiplicity, largest first.
    pub fn factors(&self, m: &Mono) -> Vec<Variable> {
        let mut out = Vec::new();
        for (pos, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                out.push(self.vars[pos].clone());
            }
        }
        out
    }

    /// `φ(m)` with `φ(x_i) = x_i` and `φ(T_{m t_j}) = m t_j`.
    pub fn phi(&self, m: &Mono) -> ImageMonomial {
        let mut x = vec![0u32; self.n];
        let mut t = vec![0u32; self.r];
        for (pos, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (gen, block) = &self.images[pos];
            for (xi, g) in x.iter_mut().zip(gen.exponents()) {
                *xi += g * e as u32;
            }
            if *block > 0 {
                t[block - 1] += e as u32;
            }
        }
        ImageMonomial {
            x: XMonomial::from_exponents(x),
            t,
        }
    }

    pub fn in_kernel(&self, b: &Binomial) -> bool {
        self.phi(b.lead()) == self.phi(b.trail())
    }

    pub fn binomial(&self, a: Mono, b: Mono) -> Option<Binomial> {
        Binomial::new(a, b)
    }

    pub fn render(&self, m: &Mono) -> String {
        text::render_factors(&self.factors(m))
    }

    pub fn render_binomial(&self, b: &Binomial) -> String {
        format!("{} - {}", self.render(b.lead()), self.render(b.trail()))
    }

    pub fn render_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(&self.render(m));
            } else if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*{}", self.render(m)));
            }
        }
        out
    }

    pub fn parse_mono(&self, s: &str) -> Result<Mono> {
        self.encode(&text::parse_smonomial(s, self.n)?)
    }

    /// Parses `lead - trail`; the terms are returned as written.
    pub fn parse_difference(&self, s: &str) -> Result<(Mono, Mono)> {
        let (a, b) = text::parse_difference(s, self.n)?;
        Ok((self.encode(&a)?, self.encode(&b)?))
    }

    pub fn parse_binomial(&self, s: &str) -> Result<Binomial> {
        let (a, b) = self.parse_difference(s)?;
        Binomial::new(a, b).ok_or_else(|| Error::Input(format!("`{s}` is the zero binomial")))
    }

    /// `Display` adapter for a binomial.
    pub fn show<'a>(&'a self, b: &'a Binomial) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Ring, &'a Binomial);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render_binomial(self.1))
            }
        }
        Show(self, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::OrderVariant;

    fn triangle_ring(variant: OrderVariant) -> Ring {
        let n = 3;
        let mut tv = Vec::new();
        for (j, s) in [[1, 2], [2, 3], [1, 3]].iter().enumerate() {
            for &i in s {
                tv.push(TVariable::new(j + 1, XMonomial::var(n, i)));
            }
        }
        Ring::new(n, 3, &tv, TermOrder::with_variant(n, variant)).unwrap()
    }

    #[test]
    fn variables_are_laid_out_descending() {
        let ring = triangle_ring(OrderVariant::Convention);
        let names: Vec<String> = (0..ring.num_vars())
            .map(|p| ring.render(&ring.var_at(p)))
            .collect();
        assert_eq!(
            names,
            ["T[x1,t3]", "T[x3,t3]", "T[x2,t2]", "T[x3,t2]", "T[x1,t1]", "T[x2,t1]", "x1", "x2", "x3"]
        );
        let ring = triangle_ring(OrderVariant::XAboveT);
        assert_eq!(ring.render(&ring.var_at(0)), "x1");
    }

    #[test]
    fn encode_decode_round_trip() {
        let ring = triangle_ring(OrderVariant::Convention);
        let m = ring.parse_mono("x2*T[x1,t1]*T[x3,t3]^2").unwrap();
        assert_eq!(ring.render(&m), "T[x3,t3]^2*T[x1,t1]*x2");
        let back = ring.encode(&ring.decode(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn phi_of_triangle_cubic_terms_agree() {
        let ring = triangle_ring(OrderVariant::Convention);
        let a = ring.parse_mono("T[x1,t1]*T[x2,t2]*T[x3,t3]").unwrap();
        let b = ring.parse_mono("T[x1,t3]*T[x2,t1]*T[x3,t2]").unwrap();
        assert_eq!(ring.phi(&a), ring.phi(&b));
        assert_eq!(ring.phi(&a).to_string(), "x1*x2*x3*t1*t2*t3");
        assert!(ring.phi(&ring.one()).is_one());
    }

    #[test]
    fn divisors_are_enumerated_once() {
        let ring = triangle_ring(OrderVariant::Convention);
        let m = ring.parse_mono("x1^2*T[x1,t1]").unwrap();
        let mut seen = Vec::new();
        m.for_each_divisor(0, 10, |d| seen.push(d.clone()));
        assert_eq!(seen.len(), 6);
        let mut seen = Vec::new();
        m.for_each_divisor(2, 2, |d| seen.push(d.clone()));
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn binomial_is_lead_first() {
        let ring = triangle_ring(OrderVariant::Convention);
        let (a, b) = ring
            .parse_difference("x2*T[x1,t1] - x1*T[x2,t1]")
            .unwrap();
        let g = Binomial::new(a.clone(), b.clone()).unwrap();
        assert_eq!(ring.render_binomial(&g), "T[x1,t1]*x2 - T[x2,t1]*x1");
        assert_eq!(Binomial::oriented(b.clone(), a.clone()).unwrap().0, -1);
        assert!(Binomial::new(a.clone(), a).is_none());
    }
}
