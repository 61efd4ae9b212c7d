//! Independent verification: fibers of φ and ψ, fiber graphs and the
//! unique-sink criterion, Buchberger S-pair checks, the brute-force kernel up
//! to a degree bound, and reduced Gröbner bases.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{s_pair_terms, Binomial, ImageMonomial, Mono, Reducer, Ring, XMonomial};
use crate::error::{Error, Result};
use crate::gb::sort_basis;
use crate::model::Model;

/// Which presentation map is meant: `φ` on `k[x, T]` or `ψ` on `k[T]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMap {
    #[default]
    Phi,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub method: String,
    pub status: Status,
    /// Number of objects examined (pairs, fibers or binomials).
    pub checked: usize,
    pub witnesses: Vec<Witness>,
}

impl Certificate {
    fn new(method: &str, checked: usize, witnesses: Vec<Witness>) -> Self {
        Certificate {
            method: method.to_string(),
            status: if witnesses.is_empty() { Status::Pass } else { Status::Fail },
            checked,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

const MAX_WITNESSES: usize = 8;

fn witness(kind: &str, detail: String) -> Witness {
    Witness {
        kind: kind.to_string(),
        detail,
    }
}

/// Membership in `ker φ`, or in `ker ψ` (x-free and `φ`-balanced).
pub fn in_kernel(ring: &Ring, b: &Binomial, map: KernelMap) -> bool {
    if map == KernelMap::Psi && !(ring.is_x_free(b.lead()) && ring.is_x_free(b.trail())) {
        return false;
    }
    ring.in_kernel(b)
}

fn kernel_violations(ring: &Ring, g: &[Binomial], map: KernelMap) -> Vec<Witness> {
    g.iter()
        .filter(|b| !in_kernel(ring, b, map))
        .take(MAX_WITNESSES)
        .map(|b| witness("not-in-kernel", ring.render_binomial(b)))
        .collect()
}

/// All monomials with image `mu`, largest first.
///
/// Distributes the `t_j`-degree of `mu` over multisets of generators of
/// `I_j`, block by block; what is left of the x-part becomes the x-factor
/// (for `ψ` nothing may be left). Fails once more than `cap` elements exist.
pub fn fiber(model: &Model, mu: &ImageMonomial, map: KernelMap, cap: usize) -> Result<Vec<Mono>> {
    let ring = &model.ring;
    let r = model.r();
    if mu.t.len() != r || mu.x.n() != model.n() {
        return Err(Error::Input(format!("{mu} is not a monomial of k[x, t_1..t_{r}]")));
    }
    let gens: Vec<Vec<Mono>> = (1..=r)
        .map(|j| {
            model
                .instance
                .generators(j, model.order())
                .into_iter()
                .map(|g| ring.t_var(&crate::algebra::TVariable::new(j, g)).unwrap())
                .collect()
        })
        .collect();
    let xgens: Vec<Vec<XMonomial>> = (1..=r)
        .map(|j| model.instance.generators(j, model.order()))
        .collect();

    struct Search<'a> {
        ring: &'a Ring,
        map: KernelMap,
        degrees: &'a [u32],
        gens: &'a [Vec<Mono>],
        xgens: &'a [Vec<XMonomial>],
        memo: HashMap<(usize, XMonomial), Rc<Vec<Mono>>>,
        cap: usize,
    }

    impl Search<'_> {
        fn tail(&mut self, j: usize, residual: &XMonomial) -> Result<Rc<Vec<Mono>>> {
            if let Some(hit) = self.memo.get(&(j, residual.clone())) {
                return Ok(hit.clone());
            }
            let out = if j == self.degrees.len() {
                let mut v = Vec::new();
                if self.map == KernelMap::Phi {
                    let mut m = self.ring.one();
                    for (i, &e) in residual.exponents().iter().enumerate() {
                        for _ in 0..e {
                            m = m.mul(&self.ring.x_var(i + 1));
                        }
                    }
                    v.push(m);
                } else if residual.is_one() {
                    v.push(self.ring.one());
                }
                v
            } else {
                let mut choices = Vec::new();
                let mut current = Vec::new();
                self.multisets(j, 0, self.degrees[j], residual.clone(), &mut current, &mut choices);
                let mut v = Vec::new();
                for (mono, rest) in choices {
                    for t in self.tail(j + 1, &rest)?.iter() {
                        v.push(mono.mul(t));
                        if v.len() > self.cap {
                            return Err(Error::Cap {
                                what: "fiber size".into(),
                                cap: self.cap,
                            });
                        }
                    }
                }
                v
            };
            let out = Rc::new(out);
            self.memo.insert((j, residual.clone()), out.clone());
            Ok(out)
        }

        /// Multisets of `left` generators of block `j` (indices from `from`)
        /// whose product divides `residual`.
        fn multisets(
            &self,
            j: usize,
            from: usize,
            left: u32,
            residual: XMonomial,
            current: &mut Vec<usize>,
            out: &mut Vec<(Mono, XMonomial)>,
        ) {
            if left == 0 {
                let mono = current
                    .iter()
                    .fold(self.ring.one(), |acc, &g| acc.mul(&self.gens[j][g]));
                out.push((mono, residual));
                return;
            }
            for g in from..self.gens[j].len() {
                if let Some(rest) = residual.div(&self.xgens[j][g]) {
                    current.push(g);
                    self.multisets(j, g, left - 1, rest, current, out);
                    current.pop();
                }
            }
        }
    }

    let mut search = Search {
        ring,
        map,
        degrees: &mu.t,
        gens: &gens,
        xgens: &xgens,
        memo: HashMap::new(),
        cap,
    };
    let mut out = (*search.tail(0, &mu.x)?).clone();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Calls `f` on every monomial of degree `lo..=hi` in the given variable
/// positions.
fn for_each_monomial(ring: &Ring, positions: &[usize], lo: u32, hi: u32, f: &mut dyn FnMut(&Mono)) {
    fn go(ring: &Ring, positions: &[usize], deg: u32, lo: u32, hi: u32, cur: &Mono, f: &mut dyn FnMut(&Mono)) {
        if deg >= lo {
            f(cur);
        }
        if deg == hi {
            return;
        }
        for (k, &p) in positions.iter().enumerate() {
            let next = cur.mul(&ring.var_at(p));
            // positions[k..] keeps each multiset once
            go(ring, &positions[k..], deg + 1, lo, hi, &next, f);
        }
    }
    go(ring, positions, 0, lo, hi, &ring.one(), f);
}

/// Every fiber of S-degree `1..=degcap`, keyed by image, elements largest
/// first. Fails when more than `cap` monomials would be enumerated.
pub fn all_fibers(
    model: &Model,
    degcap: u32,
    map: KernelMap,
    cap: usize,
) -> Result<BTreeMap<ImageMonomial, Vec<Mono>>> {
    let ring = &model.ring;
    let positions: Vec<usize> = (0..ring.num_vars())
        .filter(|&p| map == KernelMap::Phi || !ring.is_x_position(p))
        .collect();
    let mut fibers: HashMap<ImageMonomial, Vec<Mono>> = HashMap::new();
    let mut count = 0usize;
    let mut over = false;
    for_each_monomial(ring, &positions, 1, degcap, &mut |m| {
        count += 1;
        if count > cap {
            over = true;
            return;
        }
        fibers.entry(ring.phi(m)).or_default().push(m.clone());
    });
    if over {
        return Err(Error::Cap {
            what: format!("monomials of degree at most {degcap}"),
            cap,
        });
    }
    Ok(fibers
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_by(|a, b| b.cmp(a));
            (k, v)
        })
        .collect())
}

/// Default bound on enumerated monomials.
pub const DEFAULT_CAP: usize = 5_000_000;

/// The fiber graph at one image: edges join `u = w·lead(b)` to `w·trail(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    pub image: ImageMonomial,
    /// Elements, largest first.
    pub vertices: Vec<Mono>,
    /// Directed edges larger → smaller, as vertex indices.
    pub edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    pub fn build(ring: &Ring, fiber: Vec<Mono>, basis: &[Binomial]) -> FiberGraph {
        let image = fiber.first().map(|m| ring.phi(m)).unwrap_or_else(|| ImageMonomial::one(ring.n(), ring.r()));
        let index: HashMap<&Mono, usize> = fiber.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut edges = Vec::new();
        for (i, u) in fiber.iter().enumerate() {
            for b in basis {
                if let Some(w) = u.div(b.lead()) {
                    let v = w.mul(b.trail());
                    let j = *index.get(&v).expect("basis element outside the kernel");
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        FiberGraph {
            image,
            vertices: fiber,
            edges,
        }
    }

    /// Vertices without outgoing edges.
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.vertices.len()];
        for &(u, _) in &self.edges {
            has_out[u] = true;
        }
        (0..self.vertices.len()).filter(|&v| !has_out[v]).collect()
    }
}

/// `basis` is a Gröbner basis of the kernel in degrees `≤ degcap` iff each
/// fiber graph has exactly one sink. A sink is a monomial that no leading
/// term divides, so sinks are counted as standard monomials.
pub fn unique_sink_certify(
    model: &Model,
    basis: &[Binomial],
    degcap: u32,
    map: KernelMap,
    cap: usize,
) -> Result<Certificate> {
    let ring = &model.ring;
    let bad = kernel_violations(ring, basis, map);
    if !bad.is_empty() {
        return Ok(Certificate::new("sink", 0, bad));
    }
    let fibers: Vec<(ImageMonomial, Vec<Mono>)> = all_fibers(model, degcap, map, cap)?.into_iter().collect();
    let reducer = Reducer::new(basis);
    let failures: Vec<Witness> = fibers
        .par_iter()
        .filter_map(|(mu, elems)| {
            let sinks: Vec<&Mono> = elems.iter().filter(|m| reducer.is_standard(m)).collect();
            (sinks.len() != 1).then(|| {
                let listed: Vec<String> = sinks.iter().map(|m| ring.render(m)).collect();
                witness(
                    "sinks",
                    format!("fiber at {mu} has {} sinks: {}", sinks.len(), listed.join(", ")),
                )
            })
        })
        .collect();
    Ok(Certificate::new(
        "sink",
        fibers.len(),
        failures.into_iter().take(MAX_WITNESSES).collect(),
    ))
}

/// One element per minimal leading term, in [`sort_basis`] order. Spans
/// the same leading-term ideal as `g`.
pub fn minimal_lead_subset(g: &[Binomial]) -> Vec<Binomial> {
    let sorted = sort_basis(g.iter().cloned());
    let mut kept: Vec<Binomial> = Vec::new();
    let mut leads: HashSet<Mono> = HashSet::new();
    let min_deg = sorted.first().map_or(0, |b| b.lead().degree());
    for b in &sorted {
        // ascending degree: every proper divisor of this lead is decided
        let lead = b.lead();
        let mut covered = false;
        lead.for_each_divisor(min_deg, lead.degree(), |d| covered |= leads.contains(d));
        if !covered {
            leads.insert(lead.clone());
            kept.push(b.clone());
        }
    }
    kept
}

/// Checks that `basis` is a Gröbner basis of the ideal it generates.
///
/// With `G'` the minimal-lead subset: `G` is a Gröbner basis iff every
/// S-pair of `G'` reduces to zero modulo `G'` and every element of `G`
/// does too. Pairs with coprime leading terms are skipped (they always
/// reduce to zero).
pub fn buchberger_verify(ring: &Ring, basis: &[Binomial], map: KernelMap) -> Certificate {
    let bad = kernel_violations(ring, basis, map);
    if !bad.is_empty() {
        return Certificate::new("buchberger", 0, bad);
    }
    let minimal = minimal_lead_subset(basis);
    let reducer = Reducer::new(&minimal);
    let per_row: Vec<(usize, Option<Witness>)> = (0..minimal.len())
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            for j in i + 1..minimal.len() {
                let (g, h) = (&minimal[i], &minimal[j]);
                if g.lead().is_coprime(h.lead()) {
                    continue;
                }
                checked += 1;
                let (a, b) = s_pair_terms(g, h);
                if let Some((na, nb)) = reducer.reduce_difference(&a, &b) {
                    let w = witness(
                        "s-pair",
                        format!(
                            "S({}, {}) has normal form {} - {}",
                            ring.render_binomial(g),
                            ring.render_binomial(h),
                            ring.render(&na),
                            ring.render(&nb)
                        ),
                    );
                    return (checked, Some(w));
                }
            }
            (checked, None)
        })
        .collect();
    let mut checked: usize = per_row.iter().map(|(c, _)| c).sum();
    let mut failures: Vec<Witness> = per_row.into_iter().filter_map(|(_, w)| w).take(1).collect();
    if failures.is_empty() {
        checked += basis.len();
        failures = basis
            .par_iter()
            .filter_map(|b| {
                reducer.reduce_difference(b.lead(), b.trail()).map(|(na, nb)| {
                    witness(
                        "not-generated",
                        format!(
                            "{} has normal form {} - {} modulo the minimal-lead subset",
                            ring.render_binomial(b),
                            ring.render(&na),
                            ring.render(&nb)
                        ),
                    )
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .take(1)
            .collect();
    }
    Certificate::new("buchberger", checked, failures)
}

/// All differences of distinct elements of each fiber of degree
/// `≤ degcap`. Spans the kernel in each such multidegree.
pub fn brute_force_kernel(model: &Model, degcap: u32, map: KernelMap, cap: usize) -> Result<Vec<Binomial>> {
    let mut out = Vec::new();
    for elems in all_fibers(model, degcap, map, cap)?.values() {
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                out.push(Binomial::new(a.clone(), b.clone()).expect("fiber elements are distinct"));
                if out.len() > cap {
                    return Err(Error::Cap {
                        what: "kernel binomials".into(),
                        cap,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `⟨g⟩` and `⟨h⟩` agree in degrees `≤ degcap`, for `h` spanning the kernel
/// there (e.g. [`brute_force_kernel`]). Requires `g` to lie in the kernel
/// and to pass [`buchberger_verify`]; then `⟨h⟩ ⊆ ⟨g⟩` is decided by
/// reducing each element of `h` to zero.
pub fn ideal_equal_up_to(
    model: &Model,
    g: &[Binomial],
    h: &[Binomial],
    degcap: u32,
    map: KernelMap,
) -> Certificate {
    let ring = &model.ring;
    let pre = buchberger_verify(ring, g, map);
    if !pre.passed() {
        let detail = pre.witnesses.into_iter().map(|w| format!("{}: {}", w.kind, w.detail)).collect();
        return Certificate::new("oracle", 0, vec![witness("precondition", detail)]);
    }
    let wanted: Vec<&Binomial> = h.iter().filter(|b| b.degree() <= degcap).collect();
    let reducer = Reducer::new(g);
    let failures: Vec<Witness> = wanted
        .par_chunks(4096)
        .flat_map_iter(|chunk| {
            let mut memo = HashMap::new();
            let mut bad = Vec::new();
            for b in chunk {
                let na = reducer.normal_form_memo(b.lead(), &mut memo);
                let nb = reducer.normal_form_memo(b.trail(), &mut memo);
                if na != nb && bad.len() < MAX_WITNESSES {
                    bad.push(witness(
                        "not-generated",
                        format!(
                            "{} has normal form {} - {}",
                            ring.render_binomial(b),
                            ring.render(&na),
                            ring.render(&nb)
                        ),
                    ));
                }
            }
            bad
        })
        .collect();
    Certificate::new("oracle", wanted.len(), failures.into_iter().take(MAX_WITNESSES).collect())
}

/// Interreduces a Gröbner basis: keeps one element per minimal leading
/// term and replaces each trailing term by its normal form.
pub fn reduced_gb(g: &[Binomial]) -> Vec<Binomial> {
    let minimal = minimal_lead_subset(g);
    let reducer = Reducer::new(&minimal);
    let out = minimal
        .iter()
        .filter_map(|b| Binomial::new(b.lead().clone(), reducer.normal_form(b.trail())))
        .collect::<Vec<_>>();
    sort_basis(out)
}
