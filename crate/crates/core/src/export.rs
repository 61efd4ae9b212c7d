//! Serialized output: schema-versioned JSON and Macaulay2 scripts.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::algebra::{Binomial, Mono, Ring, Variable};
use crate::model::Model;
use crate::oracle::KernelMap;

/// Version of every JSON document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Macaulay2 name of each ring variable, in ring order (largest first).
/// T-variables are numbered `T_1, T_2, …` in that order.
pub fn m2_names(ring: &Ring) -> Vec<String> {
    let mut k = 0;
    ring.variables()
        .iter()
        .map(|v| match v {
            Variable::X(i) => format!("x_{i}"),
            Variable::T(_) => {
                k += 1;
                format!("T_{k}")
            }
        })
        .collect()
}

fn m2_monomial(m: &Mono, names: &[String]) -> String {
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, name)| if *e == 1 { name.clone() } else { format!("{name}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// A script declaring `S = QQ[T…, x…]` with the lex order used here, the
/// target ring `QQ[y, t]`, the map `T_{m t_j} ↦ m t_j`, and the ideal of
/// `basis`. The final assertions check the ideal against the kernel.
pub fn m2_script(ring: &Ring, basis: &[Binomial], map: KernelMap) -> String {
    let names = m2_names(ring);
    let n = ring.n();
    let r = ring.r();
    let mut s = String::new();
    writeln!(s, "-- T-variables").unwrap();
    for (v, name) in ring.variables().iter().zip(&names) {
        if let Variable::T(t) = v {
            writeln!(s, "--   {name} = {t}").unwrap();
        }
    }
    writeln!(s, "S = QQ[{}, MonomialOrder => Lex];", names.join(", ")).unwrap();
    writeln!(s, "R = QQ[y_1..y_{n}, t_1..t_{r}];").unwrap();
    let images: Vec<String> = ring
        .variables()
        .iter()
        .map(|v| match v {
            Variable::X(i) => format!("y_{i}"),
            Variable::T(t) => {
                let mut f: Vec<String> = t
                    .gen
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { format!("y_{}", i + 1) } else { format!("y_{}^{e}", i + 1) })
                    .collect();
                f.push(format!("t_{}", t.block));
                f.join("*")
            }
        })
        .collect();
    writeln!(s, "phi = map(R, S, {{{}}});", images.join(", ")).unwrap();
    if basis.is_empty() {
        writeln!(s, "I = ideal(0_S);").unwrap();
    } else {
        writeln!(s, "I = ideal(").unwrap();
        for (k, b) in basis.iter().enumerate() {
            let sep = if k + 1 == basis.len() { "" } else { "," };
            writeln!(
                s,
                "  {} - {}{sep}",
                m2_monomial(b.lead(), &names),
                m2_monomial(b.trail(), &names)
            )
            .unwrap();
        }
        writeln!(s, ");").unwrap();
    }
    writeln!(s, "assert(isSubset(I, ker phi));").unwrap();
    match map {
        KernelMap::Phi => writeln!(s, "assert(I == ker phi);").unwrap(),
        KernelMap::Psi => {
            let xs: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
            writeln!(s, "assert(I == eliminate({{{}}}, ker phi));", xs.join(", ")).unwrap()
        }
    }
    s
}

/// A binomial as `{lead, trail, degree}`.
pub fn binomial_json(ring: &Ring, b: &Binomial) -> Value {
    json!({
        "lead": ring.render(b.lead()),
        "trail": ring.render(b.trail()),
        "degree": b.degree(),
    })
}

pub fn basis_json(ring: &Ring, basis: &[Binomial]) -> Value {
    Value::Array(basis.iter().map(|b| binomial_json(ring, b)).collect())
}

/// Instance, T-variables in ring order, and the quasi-matrix.
pub fn model_json(model: &Model) -> Value {
    let tvars: Vec<String> = model
        .ring
        .variables()
        .iter()
        .filter_map(|v| match v {
            Variable::T(t) => Some(t.to_string()),
            Variable::X(_) => None,
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "n": model.n(),
        "ideals": model.instance.ideals,
        "t_variables": tvars,
        "xorder": model.order().xorder(),
        "order_variant": model.order().variant(),
        "matrix": model.matrix.to_json(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::{generators_rees, gb_fiber};
    use crate::ideal::Instance;

    fn triangle() -> Model {
        Model::convention(Instance::from_parts(3, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1)]).unwrap()).unwrap()
    }

    #[test]
    fn triangle_script_declares_nine_variables_and_four_generators() {
        let m = triangle();
        let g = generators_rees(&m);
        let s = m2_script(&m.ring, &g, KernelMap::Phi);
        let decl = s.lines().find(|l| l.starts_with("S = QQ[")).unwrap();
        assert_eq!(decl.matches("T_").count(), 6);
        assert_eq!(decl.matches("x_").count(), 3);
        let body: Vec<&str> = s
            .lines()
            .skip_while(|l| !l.starts_with("I = ideal("))
            .skip(1)
            .take_while(|l| *l != ");")
            .collect();
        assert_eq!(body.len(), 4);
        assert!(s.contains("phi = map(R, S, {"));
    }

    #[test]
    fn empty_basis_is_the_zero_ideal() {
        let m = Model::convention(Instance::from_parts(2, &[(&[1, 2], 1)]).unwrap()).unwrap();
        let g = gb_fiber(&m);
        assert!(g.is_empty());
        let s = m2_script(&m.ring, &g, KernelMap::Psi);
        assert!(s.contains("I = ideal(0_S);"));
        assert!(s.contains("eliminate({x_1, x_2}, ker phi)"));
    }

    #[test]
    fn monomials_use_powers() {
        let m = Model::convention(Instance::from_parts(2, &[(&[1, 2], 2)]).unwrap()).unwrap();
        let names = m2_names(&m.ring);
        let u = m.ring.parse_mono("T[x1*x2,t1]^2*x1").unwrap();
        assert_eq!(m2_monomial(&u, &names), "T_2^2*x_1");
    }

    #[test]
    fn counter_json_counts() {
        let inst = Instance::from_parts(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]).unwrap();
        let m = Model::convention(inst).unwrap();
        let v = model_json(&m);
        assert_eq!(v["schema"], SCHEMA_VERSION);
        assert_eq!(v["ideals"].as_array().unwrap().len(), 3);
        assert_eq!(v["t_variables"].as_array().unwrap().len(), 9);
        assert_eq!(v["matrix"]["cells"].as_array().unwrap().len(), 15);
    }
}
