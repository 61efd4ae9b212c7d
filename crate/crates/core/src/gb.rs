//! The explicit Gröbner bases of `ker φ` (multi-Rees algebra) and `ker ψ`
//! (multi-fiber ring) built from binary quasi-minors of `C_a`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{Binomial, Ring};
use crate::graph::cycles::cycle_family;
use crate::model::Model;
use crate::quasi_matrix::two_by_two_minors;

/// Sorts by degree, then by leading term (largest first), then trailing
/// term; removes duplicates.
pub fn sort_basis(g: impl IntoIterator<Item = Binomial>) -> Vec<Binomial> {
    let set: BTreeSet<Binomial> = g.into_iter().collect();
    let mut out: Vec<Binomial> = set.into_iter().collect();
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.lead().cmp(a.lead()))
            .then_with(|| b.trail().cmp(a.trail()))
    });
    out
}

/// Default cycle-length bound: each term holds at most one factor from the
/// x column and from each block.
pub fn default_max_len(model: &Model) -> usize {
    2 * (model.r() + 1)
}

/// 2×2 minors of every `(x | D_{a_l})` together with the binomials of all
/// cycles of the cycle graph with at most `max_len` edges whose right
/// vertices come from distinct blocks (or the unit vertex).
pub fn gb_rees_full(model: &Model, max_len: usize) -> Vec<Binomial> {
    let mut g = two_by_two_minors(&model.matrix, &model.ring, None);
    g.extend(cycle_family(model, true, max_len));
    sort_basis(g)
}

/// The same enumeration without the x column and the unit vertex.
pub fn gb_fiber_full(model: &Model, max_len: usize) -> Vec<Binomial> {
    let ring = &model.ring;
    let mut g: Vec<Binomial> = two_by_two_minors(&model.matrix, ring, None)
        .into_iter()
        .filter(|b| is_x_free(ring, b))
        .collect();
    g.extend(cycle_family(model, false, max_len));
    sort_basis(g)
}

pub fn gb_rees_with(model: &Model, max_len: usize) -> Vec<Binomial> {
    gb_rees_full(model, max_len)
}

pub fn gb_rees(model: &Model) -> Vec<Binomial> {
    gb_rees_with(model, default_max_len(model))
}

pub fn gb_fiber_with(model: &Model, max_len: usize) -> Vec<Binomial> {
    gb_fiber_full(model, max_len)
}

pub fn gb_fiber(model: &Model) -> Vec<Binomial> {
    gb_fiber_with(model, default_max_len(model))
}

/// A generating set of `ker φ` that is not a Gröbner basis in general: the
/// 2×2 minors involving the x column together with `gb_fiber`. Every
/// x-quasi-minor is a combination of these (see `fiber_type`).
pub fn generators_rees(model: &Model) -> Vec<Binomial> {
    let ring = &model.ring;
    let mut g: Vec<Binomial> = two_by_two_minors(&model.matrix, ring, None)
        .into_iter()
        .filter(|b| !is_x_free(ring, b))
        .collect();
    g.extend(gb_fiber(model));
    sort_basis(g)
}

pub fn is_x_free(ring: &Ring, b: &Binomial) -> bool {
    ring.is_x_free(b.lead()) && ring.is_x_free(b.trail())
}

/// Elements of `g` without x-variables, order kept.
pub fn x_free_part(ring: &Ring, g: &[Binomial]) -> Vec<Binomial> {
    g.iter().filter(|b| is_x_free(ring, b)).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub size: usize,
    /// Number of binomials of each total degree.
    pub degrees: BTreeMap<u32, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NonSquarefreeLead(String),
    DegreeTooLarge { binomial: String, degree: u32, bound: u32 },
    NotInKernel(String),
    ContainsX(String),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonSquarefreeLead(b) => write!(f, "leading term of {b} is not squarefree"),
            Violation::DegreeTooLarge { binomial, degree, bound } => {
                write!(f, "{binomial} has degree {degree} > {bound}")
            }
            Violation::NotInKernel(b) => write!(f, "{b} is not in the kernel"),
            Violation::ContainsX(b) => write!(f, "{b} involves x-variables"),
        }
    }
}

/// Squarefree leading terms, degree at most `r + 1`, membership in `ker φ`
/// (or `ker ψ` when `fiber`, which also forbids x-variables).
pub fn structural_check(g: &[Binomial], model: &Model, fiber: bool) -> Result<StructuralReport, Violation> {
    let ring = &model.ring;
    let bound = model.r() as u32 + 1;
    let mut degrees = BTreeMap::new();
    for b in g {
        let text = ring.render_binomial(b);
        if !b.lead().is_squarefree() {
            return Err(Violation::NonSquarefreeLead(text));
        }
        if b.degree() > bound {
            return Err(Violation::DegreeTooLarge {
                binomial: text,
                degree: b.degree(),
                bound,
            });
        }
        if fiber && !is_x_free(ring, b) {
            return Err(Violation::ContainsX(text));
        }
        if !ring.in_kernel(b) {
            return Err(Violation::NotInKernel(text));
        }
        *degrees.entry(b.degree()).or_insert(0) += 1;
    }
    Ok(StructuralReport {
        size: g.len(),
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Instance;

    fn model(n: usize, parts: &[(&[usize], u32)]) -> Model {
        Model::convention(Instance::from_parts(n, parts).unwrap()).unwrap()
    }

    fn render(m: &Model, g: &[Binomial]) -> BTreeSet<String> {
        g.iter().map(|b| m.ring.render_binomial(b)).collect()
    }

    fn parse_all(m: &Model, src: &[&str]) -> BTreeSet<String> {
        src.iter()
            .map(|s| m.ring.render_binomial(&m.ring.parse_binomial(s).unwrap()))
            .collect()
    }

    const TRIANGLE_FOUR: [&str; 4] = [
        "x1*T[x2,t1] - x2*T[x1,t1]",
        "x2*T[x3,t2] - x3*T[x2,t2]",
        "x1*T[x3,t3] - x3*T[x1,t3]",
        "T[x1,t1]*T[x2,t2]*T[x3,t3] - T[x1,t3]*T[x2,t1]*T[x3,t2]",
    ];

    #[test]
    fn triangle_generators() {
        let m = model(3, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1)]);
        assert_eq!(render(&m, &generators_rees(&m)), parse_all(&m, &TRIANGLE_FOUR));
    }

    #[test]
    fn triangle_basis() {
        let m = model(3, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1)]);
        let g = gb_rees(&m);
        let mut expected: Vec<&str> = TRIANGLE_FOUR.to_vec();
        // x-quasi-minors through the x column and two blocks
        expected.extend([
            "x2*T[x3,t2]*T[x1,t3] - x1*T[x2,t2]*T[x3,t3]",
            "x3*T[x2,t1]*T[x1,t3] - x2*T[x1,t1]*T[x3,t3]",
            "x3*T[x1,t1]*T[x2,t2] - x1*T[x2,t1]*T[x3,t2]",
        ]);
        assert_eq!(render(&m, &g), parse_all(&m, &expected));
        let report = structural_check(&g, &m, false).unwrap();
        assert_eq!(report.degrees, BTreeMap::from([(2, 3), (3, 4)]));

        let f = gb_fiber(&m);
        assert_eq!(
            render(&m, &f),
            parse_all(&m, &["T[x1,t1]*T[x2,t2]*T[x3,t3] - T[x1,t3]*T[x2,t1]*T[x3,t2]"])
        );
        assert_eq!(f, x_free_part(&m.ring, &g));
    }

    #[test]
    fn single_linear_ideal() {
        let m = model(2, &[(&[1, 2], 1)]);
        assert_eq!(
            render(&m, &gb_rees(&m)),
            parse_all(&m, &["x1*T[x2,t1] - x2*T[x1,t1]"])
        );
    }

    #[test]
    fn principal_ideal_has_no_relations() {
        let m = model(1, &[(&[1], 1)]);
        assert!(gb_rees(&m).is_empty());
        let report = structural_check(&gb_rees(&m), &m, false).unwrap();
        assert_eq!(report.size, 0);
    }

    #[test]
    fn counter_basis_contains_the_x_quasi_minor() {
        let m = model(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]);
        let g = gb_rees(&m);
        let q = m
            .ring
            .parse_binomial("x2*T[x2*x3,t2]*T[x1^2,t3] - x1*T[x2^2,t2]*T[x1*x3,t3]")
            .unwrap();
        assert!(g.contains(&q));
        let report = structural_check(&g, &m, false).unwrap();
        assert!(report.degrees.keys().all(|&d| d <= 4));
    }

    #[test]
    fn ex_graph_fiber_basis_contains_listed_generator() {
        let m = model(
            4,
            &[(&[1, 2], 2), (&[1, 3], 3), (&[2, 3], 2), (&[1, 4], 1), (&[2, 4], 1)],
        );
        let f = gb_fiber(&m);
        let b = m
            .ring
            .parse_binomial("T[x1*x2,t1]*T[x2^2,t3]*T[x1*x3^2,t2] - T[x2^2,t1]*T[x2*x3,t3]*T[x1^2*x3,t2]")
            .unwrap();
        assert!(f.contains(&b));
        structural_check(&f, &m, true).unwrap();
    }

    #[test]
    fn violations_are_reported() {
        let m = model(2, &[(&[1, 2], 2)]);
        let bad = m.ring.parse_binomial("T[x1^2,t1]^2 - T[x2^2,t1]^2").unwrap();
        assert!(matches!(
            structural_check(&[bad], &m, false),
            Err(Violation::NonSquarefreeLead(_))
        ));
        let off = m.ring.parse_binomial("T[x1^2,t1] - T[x2^2,t1]").unwrap();
        assert!(matches!(structural_check(&[off], &m, false), Err(Violation::NotInKernel(_))));
        let x = m.ring.parse_binomial("x1*T[x1*x2,t1] - x2*T[x1^2,t1]").unwrap();
        assert!(matches!(structural_check(&[x], &m, true), Err(Violation::ContainsX(_))));
    }
}
