//! Non-Koszulness from a chordless cycle of length ≥ 6 in the incidence
//! graph: a kernel binomial of degree ≥ 3 that no combination of quadrics
//! reaches.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::chordal::{is_chordal_bipartite, ChordalMethod};
use crate::algebra::{Binomial, Mono, TVariable, XMonomial};
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::Model;
use crate::oracle::{fiber, KernelMap};

/// A chordless cycle `x_{c_1} t_{b_1} x_{c_2} t_{b_2} … x_{c_m} t_{b_m}` of
/// the incidence graph and the binomial
/// `∏ T_{x_{c_s}^{a} t_{b_s}} − ∏ T_{x_{c_s}^{a-1} x_{c_{s+1}} t_{b_s}}`
/// with `a = a_{b_s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulWitness {
    /// `(c_s, b_s)` pairs.
    pub cycle: Vec<(usize, usize)>,
    pub alpha: Binomial,
}

impl KoszulWitness {
    pub fn cycle_text(&self) -> String {
        let mut s: Vec<String> = self.cycle.iter().map(|(c, b)| format!("x{c} - t{b}")).collect();
        s.push(format!("x{}", self.cycle[0].0));
        s.join(" - ")
    }
}

/// `None` when the incidence graph is chordal bipartite.
pub fn koszul_witness(model: &Model) -> Option<KoszulWitness> {
    let inst = &model.instance;
    let g = inst.incidence_graph();
    let verdict = is_chordal_bipartite(&g, ChordalMethod::Exhaustive);
    let cycle = verdict.witness?;
    let used = inst.used_variables();
    let nl = g.left_len();
    // the smallest combined id is a left vertex, so the cycle alternates x, t
    let pairs: Vec<(usize, usize)> = cycle
        .chunks(2)
        .map(|p| {
            debug_assert!(p[0] < nl && p[1] >= nl);
            (used[p[0]], p[1] - nl + 1)
        })
        .collect();
    Some(KoszulWitness {
        alpha: alpha_for(model, &pairs),
        cycle: pairs,
    })
}

/// The witness binomial for a cycle given as `(c_s, b_s)` pairs.
pub fn alpha_for(model: &Model, cycle: &[(usize, usize)]) -> Binomial {
    let ring = &model.ring;
    let n = model.n();
    let m = cycle.len();
    let mut plus = ring.one();
    let mut minus = ring.one();
    for (s, &(c, b)) in cycle.iter().enumerate() {
        let a = model.instance.ideal(b).power;
        let next = cycle[(s + 1) % m].0;
        let pure = XMonomial::power(n, c, a);
        let mixed = XMonomial::power(n, c, a - 1).mul_var(next);
        plus = plus.mul(&ring.t_var(&TVariable::new(b, pure)).expect("cycle edge"));
        minus = minus.mul(&ring.t_var(&TVariable::new(b, mixed)).expect("cycle edge"));
    }
    Binomial::new(plus, minus).expect("distinct terms")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCertificate {
    pub multidegree: String,
    /// Monomials of the multidegree slice.
    pub slice: usize,
    /// Distinct quadric multiples `w·(q_1 − q_2)` in the slice.
    pub quadric_moves: usize,
    pub rank_quadrics: usize,
    pub rank_with_alpha: usize,
    /// `α` is not a combination of quadric multiples (exact rank).
    pub outside_span: bool,
    /// The same verdict from connected components of the quadric moves.
    pub components_agree: bool,
}

/// Decides whether `alpha` lies in the span of all multiples of kernel
/// quadrics in its multidegree, by exact rank over Q, and cross-checks the
/// answer with connectivity of the quadric moves.
pub fn not_quadric_generated(model: &Model, alpha: &Binomial, map: KernelMap, cap: usize) -> Result<SpanCertificate> {
    let ring = &model.ring;
    if !crate::oracle::in_kernel(ring, alpha, map) {
        return Err(Error::Input(format!(
            "{} is not in the kernel",
            ring.render_binomial(alpha)
        )));
    }
    let mu = ring.phi(alpha.lead());
    let slice = fiber(model, &mu, map, cap)?;
    let index: HashMap<&Mono, usize> = slice.iter().enumerate().map(|(i, u)| (u, i)).collect();

    let mut quadric_fibers: HashMap<Mono, Vec<Mono>> = HashMap::new();
    let mut moves: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, u) in slice.iter().enumerate() {
        let mut divisors = Vec::new();
        u.for_each_divisor(2, 2, |d| divisors.push(d.clone()));
        for d in divisors {
            let others = match quadric_fibers.get(&d) {
                Some(v) => v.clone(),
                None => {
                    let v = fiber(model, &ring.phi(&d), map, cap)?;
                    quadric_fibers.insert(d.clone(), v.clone());
                    v
                }
            };
            let w = u.div(&d).expect("divisor");
            for e in others {
                if e == d {
                    continue;
                }
                let j = index[&w.mul(&e)];
                moves.insert((i.min(j), i.max(j)));
            }
        }
    }

    let width = slice.len();
    let row = |a: usize, b: usize| -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); width];
        v[a] = BigInt::from(1);
        v[b] = BigInt::from(-1);
        v
    };
    let rows: Vec<Vec<BigInt>> = moves.iter().map(|&(a, b)| row(a, b)).collect();
    let target = row(index[alpha.lead()], index[alpha.trail()]);
    let rank_quadrics = linalg::rank(&rows);
    let mut extended = rows;
    extended.push(target);
    let rank_with_alpha = linalg::rank(&extended);
    let outside_span = rank_with_alpha > rank_quadrics;

    // union-find over the moves
    let mut parent: Vec<usize> = (0..width).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &(a, b) in &moves {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let separated = find(&mut parent, index[alpha.lead()]) != find(&mut parent, index[alpha.trail()]);

    Ok(SpanCertificate {
        multidegree: mu.to_string(),
        slice: width,
        quadric_moves: moves.len(),
        rank_quadrics,
        rank_with_alpha,
        outside_span,
        components_agree: separated == outside_span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Instance;
    use crate::oracle::DEFAULT_CAP;

    fn model(n: usize, parts: &[(&[usize], u32)]) -> Model {
        Model::convention(Instance::from_parts(n, parts).unwrap()).unwrap()
    }

    #[test]
    fn triangle_alpha() {
        let m = model(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]);
        let w = koszul_witness(&m).unwrap();
        assert_eq!(w.cycle.len(), 3);
        assert!(m.ring.in_kernel(&w.alpha));
        let expected = m
            .ring
            .parse_binomial("T[x1^2,t1]*T[x2^2,t2]*T[x3^2,t3] - T[x1*x2,t1]*T[x2*x3,t2]*T[x1*x3,t3]")
            .unwrap();
        assert_eq!(w.cycle, vec![(1, 1), (2, 2), (3, 3)]);
        assert_eq!(w.alpha, expected);
        for map in [KernelMap::Phi, KernelMap::Psi] {
            let cert = not_quadric_generated(&m, &w.alpha, map, DEFAULT_CAP).unwrap();
            assert!(cert.outside_span && cert.components_agree, "{cert:?}");
        }
    }

    #[test]
    fn chordal_instance_has_no_witness() {
        let m = model(3, &[(&[1, 2], 2), (&[1, 2, 3], 1)]);
        assert!(koszul_witness(&m).is_none());
    }

    #[test]
    fn quadric_multiple_is_inside_the_span() {
        let m = model(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]);
        let q = m.ring.parse_binomial("T[x1^2,t1]*T[x2^2,t1]*T[x3^2,t3] - T[x1*x2,t1]^2*T[x3^2,t3]").unwrap();
        let cert = not_quadric_generated(&m, &q, KernelMap::Psi, DEFAULT_CAP).unwrap();
        assert!(!cert.outside_span && cert.components_agree);
    }

    #[test]
    fn mixed_powers_respect_each_block() {
        let m = model(3, &[(&[1, 2], 1), (&[2, 3], 3), (&[1, 3], 2)]);
        let w = koszul_witness(&m).unwrap();
        let text = m.ring.render_binomial(&w.alpha);
        assert!(text.contains("T[x2^3,t2]"), "{text}");
        assert_eq!(w.alpha.lead().degree(), 3);
        let cert = not_quadric_generated(&m, &w.alpha, KernelMap::Phi, DEFAULT_CAP).unwrap();
        assert!(cert.outside_span && cert.components_agree);
    }

    #[test]
    fn rejects_non_kernel_input() {
        let m = model(2, &[(&[1, 2], 1)]);
        let b = m.ring.parse_binomial("T[x1,t1] - T[x2,t1]").unwrap();
        assert!(not_quadric_generated(&m, &b, KernelMap::Phi, DEFAULT_CAP).is_err());
    }
}
