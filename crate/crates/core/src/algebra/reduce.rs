//! Division by binomials, S-polynomials, and an indexed normal-form reducer.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::ring::{Binomial, Mono, Poly};

/// Result of dividing `f` by a list of binomials.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: Poly,
    /// `quotients[i]` multiplies `G[i]`; `f - remainder = Σ quotients[i]·G[i]`.
    pub quotients: Vec<Poly>,
}

impl Reduction {
    /// Re-sums `Σ q_i g_i + remainder`, which must equal the dividend.
    pub fn recombine(&self, g: &[Binomial]) -> Poly {
        let mut out = self.remainder.clone();
        for (q, gi) in self.quotients.iter().zip(g) {
            out.add(&q.mul_poly(&gi.to_poly()));
        }
        out
    }
}

/// Full division of `f` by `g`.
///
/// The leading term is rewritten first; among several divisors the first in
/// `g`'s sequence is used.
pub fn reduce(f: &Poly, g: &[Binomial]) -> Reduction {
    let mut p = f.clone();
    let mut remainder = Poly::zero();
    let mut quotients = vec![Poly::zero(); g.len()];
    while let Some((lt, c)) = p.leading() {
        let (lt, c) = (lt.clone(), c.clone());
        match g.iter().position(|gi| gi.lead().divides(&lt)) {
            Some(i) => {
                let q = lt.div(g[i].lead()).expect("divisor checked");
                p.add_scaled(&-c.clone(), &q, &g[i].to_poly());
                quotients[i].add_term(q, c);
            }
            None => {
                p.add_term(lt.clone(), -c.clone());
                remainder.add_term(lt, c);
            }
        }
    }
    Reduction {
        remainder,
        quotients,
    }
}

/// S-polynomial of two binomials.
#[derive(Clone, Debug)]
pub struct SPolynomial {
    pub poly: Poly,
    /// Leading terms are coprime: the product criterion says the pair
    /// reduces to zero, so it can be skipped.
    pub coprime: bool,
}

pub fn s_polynomial(g: &Binomial, h: &Binomial) -> SPolynomial {
    let l = g.lead().lcm(h.lead());
    let ug = l.div(g.lead()).unwrap();
    let uh = l.div(h.lead()).unwrap();
    let mut poly = Poly::zero();
    poly.add_scaled(&BigInt::one(), &ug, &g.to_poly());
    poly.add_scaled(&-BigInt::one(), &uh, &h.to_poly());
    SPolynomial {
        poly,
        coprime: g.lead().is_coprime(h.lead()),
    }
}

/// The S-polynomial of binomials as a pair of monomials `(a, b)` meaning
/// `a - b`, where `a` comes from `h` and `b` from `g`.
pub fn s_pair_terms(g: &Binomial, h: &Binomial) -> (Mono, Mono) {
    let l = g.lead().lcm(h.lead());
    let a = l.div(h.lead()).unwrap().mul(h.trail());
    let b = l.div(g.lead()).unwrap().mul(g.trail());
    (a, b)
}

/// Normal forms modulo a fixed list of binomials.
///
/// Reducing a monomial by binomials only ever rewrites it into another
/// monomial, so the remainder of a binomial `u - v` is `nf(u) - nf(v)`. The
/// divisor choice matches [`reduce`]: the first element of the list whose
/// leading term divides.
#[derive(Clone, Debug)]
pub struct Reducer<'a> {
    basis: &'a [Binomial],
    leads: HashMap<Mono, usize>,
    min_deg: u32,
    max_deg: u32,
}

impl<'a> Reducer<'a> {
    pub fn new(basis: &'a [Binomial]) -> Self {
        let mut leads = HashMap::new();
        let (mut min_deg, mut max_deg) = (u32::MAX, 0);
        for (i, b) in basis.iter().enumerate() {
            leads.entry(b.lead().clone()).or_insert(i);
            let d = b.lead().degree();
            min_deg = min_deg.min(d);
            max_deg = max_deg.max(d);
        }
        Reducer {
            basis,
            leads,
            min_deg,
            max_deg,
        }
    }

    pub fn basis(&self) -> &[Binomial] {
        self.basis
    }

    /// Index of the first basis element whose leading term divides `m`.
    pub fn divisor(&self, m: &Mono) -> Option<usize> {
        if self.leads.is_empty() || m.degree() < self.min_deg {
            return None;
        }
        let mut best: Option<usize> = None;
        m.for_each_divisor(self.min_deg, self.max_deg, |d| {
            if let Some(&i) = self.leads.get(d) {
                best = Some(best.map_or(i, |b| b.min(i)));
            }
        });
        best
    }

    pub fn is_standard(&self, m: &Mono) -> bool {
        self.divisor(m).is_none()
    }

    /// One rewriting step `m -> (m / lead) · trail`.
    pub fn step(&self, m: &Mono) -> Option<Mono> {
        self.divisor(m).map(|i| {
            let b = &self.basis[i];
            m.div(b.lead()).unwrap().mul(b.trail())
        })
    }

    pub fn normal_form(&self, m: &Mono) -> Mono {
        let mut cur = m.clone();
        while let Some(next) = self.step(&cur) {
            cur = next;
        }
        cur
    }

    /// Normal form with a memo table shared across calls.
    pub fn normal_form_memo(&self, m: &Mono, memo: &mut HashMap<Mono, Mono>) -> Mono {
        let mut chain = Vec::new();
        let mut cur = m.clone();
        let result = loop {
            if let Some(done) = memo.get(&cur) {
                break done.clone();
            }
            match self.step(&cur) {
                Some(next) => {
                    chain.push(cur);
                    cur = next;
                }
                None => {
                    memo.insert(cur.clone(), cur.clone());
                    break cur;
                }
            }
        };
        for c in chain {
            memo.insert(c, result.clone());
        }
        result
    }

    /// Remainder of `a - b`: `None` when it reduces to zero.
    pub fn reduce_difference(&self, a: &Mono, b: &Mono) -> Option<(Mono, Mono)> {
        let (na, nb) = (self.normal_form(a), self.normal_form(b));
        (na != nb).then_some((na, nb))
    }
}
