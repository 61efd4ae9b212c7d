//! Instances: a list of ideals `I_j = J_j^{a_j}` with each `J_j` generated by
//! a subset of the variables.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{OrderVariant, TVariable, TermOrder, XMonomial};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// `J^a` with `J = ⟨x_i : i ∈ support⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealSpec {
    /// Sorted, 1-based variable indices.
    #[serde(rename = "vars")]
    pub support: Vec<usize>,
    pub power: u32,
}

impl IdealSpec {
    pub fn new(mut support: Vec<usize>, power: u32) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return Err(Error::Input("an ideal needs at least one variable".into()));
        }
        if power == 0 {
            return Err(Error::Input("powers start at 1".into()));
        }
        Ok(IdealSpec { support, power })
    }

    /// Smallest variable index of the support: the pivot row of `D_{a_l}`.
    pub fn pivot(&self) -> usize {
        self.support[0]
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    /// Minimal generators of `J^a`, ascending in grevlex.
    pub fn generators(&self, n: usize, order: &TermOrder) -> Vec<XMonomial> {
        let mut g = XMonomial::all_of_degree(n, &self.support, self.power);
        g.sort_by(|a, b| order.grevlex(a, b));
        g
    }

    /// Minimal generators of `J^{a-1}` (just `1` when `a = 1`), ascending.
    pub fn reduced_generators(&self, n: usize, order: &TermOrder) -> Vec<XMonomial> {
        let mut g = XMonomial::all_of_degree(n, &self.support, self.power - 1);
        g.sort_by(|a, b| order.grevlex(a, b));
        g
    }

    /// `C(|support| + a - 1, a)`
    pub fn generator_count(&self) -> usize {
        binomial_coefficient(self.support.len() + self.power as usize - 1, self.power as usize)
    }
}

pub(crate) fn binomial_coefficient(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Optional settings carried in an instance file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degcap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xorder: Option<Vec<usize>>,
    #[serde(default, rename = "order-variant", skip_serializing_if = "Option::is_none")]
    pub order_variant: Option<OrderVariant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    pub ideals: Vec<IdealSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: usize,
    ideals: Vec<RawIdeal>,
    #[serde(default)]
    options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    vars: Vec<usize>,
    power: u32,
}

impl Instance {
    pub fn new(n: usize, ideals: Vec<IdealSpec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("need at least one variable".into()));
        }
        if ideals.is_empty() {
            return Err(Error::Input("need at least one ideal".into()));
        }
        for (j, spec) in ideals.iter().enumerate() {
            if let Some(&i) = spec.support.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::Input(format!(
                    "ideal {} uses x{i}, outside x1..x{n}",
                    j + 1
                )));
            }
        }
        Ok(Instance { n, ideals })
    }

    /// Shorthand for tests and examples: `(support, power)` pairs.
    pub fn from_parts(n: usize, parts: &[(&[usize], u32)]) -> Result<Self> {
        let ideals = parts
            .iter()
            .map(|(s, a)| IdealSpec::new(s.to_vec(), *a))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(n, ideals)
    }

    /// Parses the JSON instance format, returning the instance and any options.
    pub fn parse_json(src: &str) -> Result<(Instance, Options)> {
        let raw: InstanceFile = serde_json::from_str(src)?;
        let ideals = raw
            .ideals
            .into_iter()
            .enumerate()
            .map(|(j, r)| {
                IdealSpec::new(r.vars, r.power)
                    .map_err(|e| Error::Input(format!("ideal {}: {e}", j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Instance::new(raw.n, ideals)?, raw.options))
    }

    pub fn load(path: &Path) -> Result<(Instance, Options)> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Instance::parse_json(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }

    pub fn r(&self) -> usize {
        self.ideals.len()
    }

    /// The ideal of block `j` (1-based).
    pub fn ideal(&self, j: usize) -> &IdealSpec {
        &self.ideals[j - 1]
    }

    pub fn generators(&self, j: usize, order: &TermOrder) -> Vec<XMonomial> {
        self.ideal(j).generators(self.n, order)
    }

    /// All T-variables, largest first.
    pub fn t_variables(&self, order: &TermOrder) -> Vec<TVariable> {
        let mut out: Vec<TVariable> = (1..=self.r())
            .flat_map(|j| {
                self.generators(j, order)
                    .into_iter()
                    .map(move |g| TVariable::new(j, g))
            })
            .collect();
        out.sort_by(|a, b| order.compare_t(b, a));
        out
    }

    pub fn t_variable_count(&self) -> usize {
        self.ideals.iter().map(IdealSpec::generator_count).sum()
    }

    pub fn is_t_variable(&self, t: &TVariable) -> bool {
        if t.block == 0 || t.block > self.r() || t.gen.n() != self.n {
            return false;
        }
        let spec = self.ideal(t.block);
        t.gen.degree() == spec.power && t.gen.support().iter().all(|&i| spec.contains(i))
    }

    /// x-indices occurring in some support, ascending.
    pub fn used_variables(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.ideals.iter().any(|s| s.contains(i)))
            .collect()
    }

    /// Left: `x_i` for `i` in some support; right: `t_1..t_r`; edge
    /// `(x_i, t_j)` when `i` is in the support of `J_j`.
    pub fn incidence_graph(&self) -> BipartiteGraph {
        let left = self.used_variables();
        let mut g = BipartiteGraph::new(
            left.iter().map(|i| format!("x{i}")).collect(),
            (1..=self.r()).map(|j| format!("t{j}")).collect(),
        );
        for (a, &i) in left.iter().enumerate() {
            for (j, spec) in self.ideals.iter().enumerate() {
                if spec.contains(i) {
                    g.add_edge(a, j);
                }
            }
        }
        g
    }
}

/// The order named by the options, falling back to the convention order.
pub fn term_order(n: usize, options: &Options) -> Result<TermOrder> {
    let variant = options.order_variant.unwrap_or_default();
    match &options.xorder {
        Some(xo) if xo.len() != n => Err(Error::Input(format!(
            "xorder has {} entries, instance has {n} variables",
            xo.len()
        ))),
        Some(xo) => TermOrder::new(xo.clone(), variant),
        None => Ok(TermOrder::with_variant(n, variant)),
    }
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;

    #[test]
    fn generators_ascend_in_grevlex() {
        let o = TermOrder::convention(3);
        let spec = IdealSpec::new(vec![1, 2], 2).unwrap();
        let g: Vec<String> = spec.generators(3, &o).iter().map(|m| m.to_string()).collect();
        assert_eq!(g, ["x2^2", "x1*x2", "x1^2"]);

        let spec = IdealSpec::new(vec![1, 3], 3).unwrap();
        let g: Vec<String> = spec.generators(3, &o).iter().map(|m| m.to_string()).collect();
        assert_eq!(g, ["x3^3", "x1*x3^2", "x1^2*x3", "x1^3"]);

        let spec = IdealSpec::new(vec![1], 3).unwrap();
        assert_eq!(spec.generators(1, &o.clone()).len(), 1);
    }

    #[test]
    fn generator_counts_match_binomial_coefficients() {
        for size in 1..=6usize {
            for a in 1..=4u32 {
                let spec = IdealSpec::new((1..=size).collect(), a).unwrap();
                let o = TermOrder::convention(6);
                let g = spec.generators(6, &o);
                assert_eq!(g.len(), spec.generator_count());
                assert!(g.iter().all(|m| m.degree() == a));
                assert!(g.iter().all(|m| m.support().iter().all(|i| *i <= size)));
            }
        }
    }

    #[test]
    fn t_variable_counts() {
        let tri = Instance::from_parts(3, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1)]).unwrap();
        let counter = Instance::from_parts(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]).unwrap();
        let exg = Instance::from_parts(
            4,
            &[(&[1, 2], 2), (&[1, 3], 3), (&[2, 3], 2), (&[1, 4], 1), (&[2, 4], 1)],
        )
        .unwrap();
        for (inst, count) in [(tri, 6), (counter, 9), (exg, 14)] {
            let o = TermOrder::convention(inst.n);
            let tv = inst.t_variables(&o);
            assert_eq!(tv.len(), count);
            assert_eq!(inst.t_variable_count(), count);
            assert!(tv.windows(2).all(|w| o.compare_t(&w[0], &w[1]) == Ordering::Greater));
            assert!(tv.iter().all(|t| inst.is_t_variable(t)));
        }
    }

    #[test]
    fn parses_instance_files() {
        let src = r#"{"n": 3, "ideals": [{"vars": [2, 1], "power": 2}],
                     "options": {"degcap": 5, "order-variant": "x-above-T"}}"#;
        let (inst, opts) = Instance::parse_json(src).unwrap();
        assert_eq!(inst.ideals[0].support, vec![1, 2]);
        assert_eq!(opts.degcap, Some(5));
        assert_eq!(opts.order_variant, Some(OrderVariant::XAboveT));

        assert!(Instance::parse_json(r#"{"n": 2, "ideals": [{"vars": [3], "power": 1}]}"#).is_err());
        assert!(Instance::parse_json(r#"{"n": 2, "ideals": [{"vars": [], "power": 1}]}"#).is_err());
        assert!(Instance::parse_json(r#"{"n": 2, "ideals": [{"vars": [1], "power": 0}]}"#).is_err());
        assert!(Instance::parse_json(r#"{"n": 2, "ideals": []}"#).is_err());
        assert!(Instance::parse_json(r#"{"n": 2, "ideals": [{"vars": [1], "power": 1}], "bogus": 1}"#).is_err());
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = Instance::from_parts(3, &[(&[1, 2], 2), (&[3], 1)]).unwrap();
        let (back, _) = Instance::parse_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn incidence_graph_edges_follow_divisibility() {
        let exg = Instance::from_parts(
            4,
            &[(&[1, 2], 2), (&[1, 3], 3), (&[2, 3], 2), (&[1, 4], 1), (&[2, 4], 1)],
        )
        .unwrap();
        let g = exg.incidence_graph();
        assert_eq!((g.left_len(), g.right_len(), g.edge_count()), (4, 5, 10));
        let o = TermOrder::convention(4);
        for (a, &i) in exg.used_variables().iter().enumerate() {
            for j in 1..=exg.r() {
                let divides = exg.generators(j, &o).iter().any(|m| m.exponent(i) > 0);
                assert_eq!(g.has_edge(a, j - 1), divides);
            }
        }

        let star = Instance::from_parts(3, &[(&[1, 2, 3], 2)]).unwrap().incidence_graph();
        assert_eq!((star.right_len(), star.edge_count()), (1, 3));
    }

    #[test]
    fn options_select_the_order() {
        let opts = Options {
            xorder: Some(vec![2, 1]),
            ..Options::default()
        };
        let o = term_order(2, &opts).unwrap();
        assert_eq!(o.xorder(), &[2, 1]);
        assert!(term_order(3, &opts).is_err());
    }
}
