//! Constructive rewriting of binary quasi-minors.
//!
//! [`rewrite_to_two_by_two`] writes a binary quasi-minor of an honest matrix
//! as a combination of its 2×2 minors. [`rewrite_fiber_type`] writes an
//! x-binary quasi-minor of `C_a` as a combination of 2×2 x-minors and
//! x-free binary quasi-minors.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{Binomial, Mono, Poly, Ring};
use crate::quasi_matrix::{validate_binary_quasi_minor, Cell, Placement, QuasiMatrix, Rejection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// A 2×2 minor not touching the x column.
    TwoByTwo,
    /// A 2×2 minor using the x column.
    XMinor,
    /// A binary quasi-minor without x-entries of size ≥ 3.
    XFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationTerm {
    pub sign: i8,
    pub coefficient: Mono,
    pub generator: Binomial,
    pub kind: GeneratorKind,
    /// Cells of the generator, `plus` on its leading term.
    pub cells: Placement,
}

/// `Σ sign · coefficient · generator`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination {
    pub terms: Vec<CombinationTerm>,
}

impl Combination {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The combination multiplied out.
    pub fn expand(&self) -> Poly {
        let mut p = Poly::zero();
        for t in &self.terms {
            p.add_scaled(&BigInt::from(t.sign), &t.coefficient, &t.generator.to_poly());
        }
        p
    }

    /// True when the expansion equals `plus - minus`.
    pub fn expands_to(&self, plus: &Mono, minus: &Mono) -> bool {
        let mut target = Poly::zero();
        target.add_term(plus.clone(), BigInt::from(1));
        target.add_term(minus.clone(), BigInt::from(-1));
        self.expand() == target
    }

    /// One line per term: `+ coefficient * (lead - trail)`.
    pub fn render(&self, name: &dyn Fn(&Mono) -> String) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let sign = if t.sign > 0 { '+' } else { '-' };
            let coef = if t.coefficient.is_one() {
                String::new()
            } else {
                format!("{} * ", name(&t.coefficient))
            };
            let kind = match t.kind {
                GeneratorKind::TwoByTwo => "2x2 minor",
                GeneratorKind::XMinor => "2x2 x-minor",
                GeneratorKind::XFree => "x-free quasi-minor",
            };
            out.push_str(&format!(
                "{sign} {coef}({} - {})    [{kind}]\n",
                name(t.generator.lead()),
                name(t.generator.trail())
            ));
        }
        out
    }

    fn push(&mut self, coefficient: Mono, plus: Mono, minus: Mono, cells: Placement, kind: GeneratorKind) {
        if let Some((sign, generator)) = Binomial::oriented(plus, minus) {
            let cells = if sign > 0 {
                cells
            } else {
                Placement {
                    plus: cells.minus,
                    minus: cells.plus,
                }
            };
            self.terms.push(CombinationTerm {
                sign,
                coefficient,
                generator,
                kind,
                cells,
            });
        }
    }
}

/// A matrix whose cells hold monomials (or nothing).
pub trait CellEntries {
    fn entry(&self, cell: &Cell) -> Option<Mono>;
    fn one(&self) -> Mono;
    /// Whether `cell` lies in the x column.
    fn is_x_cell(&self, _cell: &Cell) -> bool {
        false
    }
}

/// `p × q` matrix of independent symbols `a_{ij}`, as variables of a ring
/// with `p·q` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMatrix {
    pub rows: usize,
    pub cols: usize,
}

impl SymbolMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SymbolMatrix { rows, cols }
    }

    /// The symbol at 1-based `(row, col)`.
    pub fn symbol(&self, row: usize, col: usize) -> Mono {
        Mono::var(self.rows * self.cols, (row - 1) * self.cols + (col - 1))
    }

    pub fn render(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (pos, &e) in m.exponents().iter().enumerate() {
            let name = format!("a{}{}", pos / self.cols + 1, pos % self.cols + 1);
            match e {
                0 => {}
                1 => parts.push(name),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl CellEntries for SymbolMatrix {
    /// Cells use 1-based rows and columns.
    fn entry(&self, cell: &Cell) -> Option<Mono> {
        (cell.row >= 1 && cell.row <= self.rows && cell.col >= 1 && cell.col <= self.cols)
            .then(|| self.symbol(cell.row, cell.col))
    }

    fn one(&self) -> Mono {
        Mono::one(self.rows * self.cols)
    }
}

/// `C_a` with its entries read as ring monomials.
pub struct RingMatrix<'a> {
    pub c: &'a QuasiMatrix,
    pub ring: &'a Ring,
}

impl CellEntries for RingMatrix<'_> {
    fn entry(&self, cell: &Cell) -> Option<Mono> {
        self.c
            .entry_at(cell)
            .map(|v| self.ring.variable(v).expect("matrix entries are ring variables"))
    }

    fn one(&self) -> Mono {
        self.ring.one()
    }

    fn is_x_cell(&self, cell: &Cell) -> bool {
        self.c.column(cell.col).class() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteError {
    NotBinary,
    EmptyCell(Cell),
    NotXQuasiMinor,
    Placement(Rejection),
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::NotBinary => write!(f, "cells do not form a binary quasi-matrix"),
            RewriteError::EmptyCell(c) => write!(f, "cell ({}, {}) is empty", c.row, c.col),
            RewriteError::NotXQuasiMinor => write!(f, "not an x-binary quasi-minor"),
            RewriteError::Placement(r) => write!(f, "{r}"),
        }
    }
}

impl std::error::Error for RewriteError {}

fn read(a: &dyn CellEntries, cell: &Cell) -> Result<Mono, RewriteError> {
    a.entry(cell).ok_or_else(|| RewriteError::EmptyCell(cell.clone()))
}

fn product(a: &dyn CellEntries, cells: &[Cell]) -> Result<Mono, RewriteError> {
    cells.iter().try_fold(a.one(), |acc, c| Ok(acc.mul(&read(a, c)?)))
}

fn minor_kind(a: &dyn CellEntries, cells: &[Cell]) -> GeneratorKind {
    if cells.iter().any(|c| a.is_x_cell(c)) {
        GeneratorKind::XMinor
    } else {
        GeneratorKind::TwoByTwo
    }
}

/// `V_1V_2⋯V_n − W_1W_2⋯W_n` as a combination of 2×2 minors of `a`.
///
/// `W_1` is the first minus cell in (row, column) order, `V_1` the plus cell
/// in its row, `V_2` the plus cell in its column and `U` the cell in the row
/// of `V_2` and the column of `V_1`:
/// `δ = (V_1V_2 − UW_1)V_3⋯V_n + W_1(UV_3⋯V_n − W_2⋯W_n)`.
/// When `U` is itself a minus cell the second bracket factors as
/// `U(V_3⋯V_n − …)`, a quasi-minor two sizes smaller.
pub fn rewrite_to_two_by_two(delta: &Placement, a: &dyn CellEntries) -> Result<Combination, RewriteError> {
    if !delta.is_binary() {
        return Err(RewriteError::NotBinary);
    }
    let mut out = Combination::default();
    two_by_two_into(delta, a, a.one(), &mut out)?;
    Ok(out)
}

fn two_by_two_into(
    delta: &Placement,
    a: &dyn CellEntries,
    coefficient: Mono,
    out: &mut Combination,
) -> Result<(), RewriteError> {
    let n = delta.size();
    if n == 2 {
        let (p, m) = (product(a, &delta.plus)?, product(a, &delta.minus)?);
        out.push(coefficient, p, m, delta.clone(), minor_kind(a, &delta.plus));
        return Ok(());
    }
    let w1 = delta.minus.iter().min().expect("nonempty").clone();
    let v1 = delta.plus.iter().find(|c| c.row == w1.row).expect("binary").clone();
    let v2 = delta.plus.iter().find(|c| c.col == w1.col).expect("binary").clone();
    let u = Cell {
        row: v2.row,
        col: v1.col,
    };
    let rest_plus: Vec<Cell> = delta.plus.iter().filter(|c| **c != v1 && **c != v2).cloned().collect();
    let rest_coef = product(a, &rest_plus)?;
    let minor = Placement {
        plus: vec![v1.clone(), v2.clone()],
        minus: vec![u.clone(), w1.clone()],
    };
    out.push(
        coefficient.mul(&rest_coef),
        read(a, &v1)?.mul(&read(a, &v2)?),
        read(a, &u)?.mul(&read(a, &w1)?),
        minor.clone(),
        minor_kind(a, &minor.plus),
    );
    let w1_val = read(a, &w1)?;
    let rest_minus: Vec<Cell> = delta.minus.iter().filter(|c| **c != w1).cloned().collect();
    if rest_minus.contains(&u) {
        let inner = Placement {
            plus: rest_plus,
            minus: rest_minus.into_iter().filter(|c| *c != u).collect(),
        };
        let coef = coefficient.mul(&w1_val).mul(&read(a, &u)?);
        if inner.size() >= 2 {
            two_by_two_into(&inner, a, coef, out)?;
        }
    } else {
        let mut plus = vec![u];
        plus.extend(rest_plus);
        let inner = Placement { plus, minus: rest_minus };
        two_by_two_into(&inner, a, coefficient.mul(&w1_val), out)?;
    }
    Ok(())
}

/// `f = x_iV_1⋯V_m − x_jW_1⋯W_m` as a combination of 2×2 x-minors and
/// x-free binary quasi-minors of `C_a`.
///
/// `W_1` is the minus cell in the row of `x_i` and `V_1` the plus cell in
/// the column of `W_1`. If `V_1` lies in the row of `x_j`:
/// `f = (x_iV_1 − x_jW_1)V_2⋯V_m + x_jW_1(V_2⋯V_m − W_2⋯W_m)`;
/// otherwise with `x_v` in the row of `V_1`:
/// `f = (x_iV_1 − x_vW_1)V_2⋯V_m + W_1(x_vV_2⋯V_m − x_jW_2⋯W_m)`,
/// and the second bracket has one T-factor less.
pub fn rewrite_fiber_type(f: &Binomial, c: &QuasiMatrix, ring: &Ring) -> Result<Combination, RewriteError> {
    let placement =
        validate_binary_quasi_minor(c, ring, f.lead(), f.trail()).map_err(RewriteError::Placement)?;
    let a = RingMatrix { c, ring };
    if !placement.plus.iter().any(|cell| a.is_x_cell(cell)) {
        return Err(RewriteError::NotXQuasiMinor);
    }
    let mut out = Combination::default();
    fiber_type_into(&placement, &a, ring.one(), &mut out)?;
    Ok(out)
}

fn fiber_type_into(
    f: &Placement,
    a: &RingMatrix<'_>,
    coefficient: Mono,
    out: &mut Combination,
) -> Result<(), RewriteError> {
    let xi = f.plus.iter().find(|c| a.is_x_cell(c)).expect("x-quasi-minor").clone();
    let xj = f.minus.iter().find(|c| a.is_x_cell(c)).expect("x-quasi-minor").clone();
    if f.size() == 2 {
        let (p, m) = (product(a, &f.plus)?, product(a, &f.minus)?);
        out.push(coefficient, p, m, f.clone(), GeneratorKind::XMinor);
        return Ok(());
    }
    let w1 = f.minus.iter().find(|c| c.row == xi.row).expect("binary").clone();
    let v1 = f.plus.iter().find(|c| c.col == w1.col).expect("binary").clone();
    let rest_plus: Vec<Cell> = f.plus.iter().filter(|c| **c != xi && **c != v1).cloned().collect();
    let rest_minus: Vec<Cell> = f.minus.iter().filter(|c| **c != xj && **c != w1).cloned().collect();
    let v_rest = product(a, &rest_plus)?;
    let w1_val = read(a, &w1)?;
    if v1.row == xj.row {
        let minor = Placement {
            plus: vec![xi.clone(), v1.clone()],
            minus: vec![xj.clone(), w1.clone()],
        };
        out.push(
            coefficient.mul(&v_rest),
            read(a, &xi)?.mul(&read(a, &v1)?),
            read(a, &xj)?.mul(&w1_val),
            minor,
            GeneratorKind::XMinor,
        );
        let tail = Placement {
            plus: rest_plus,
            minus: rest_minus,
        };
        let (p, m) = (product(a, &tail.plus)?, product(a, &tail.minus)?);
        let kind = if tail.size() == 2 {
            GeneratorKind::TwoByTwo
        } else {
            GeneratorKind::XFree
        };
        let coef = coefficient.mul(&read(a, &xj)?).mul(&w1_val);
        out.push(coef, p, m, tail, kind);
    } else {
        let xv = Cell {
            row: v1.row,
            col: xi.col,
        };
        let minor = Placement {
            plus: vec![xi.clone(), v1.clone()],
            minus: vec![xv.clone(), w1.clone()],
        };
        out.push(
            coefficient.mul(&v_rest),
            read(a, &xi)?.mul(&read(a, &v1)?),
            read(a, &xv)?.mul(&w1_val),
            minor,
            GeneratorKind::XMinor,
        );
        let mut plus = vec![xv];
        plus.extend(rest_plus);
        let mut minus = vec![xj];
        minus.extend(rest_minus);
        fiber_type_into(&Placement { plus, minus }, a, coefficient.mul(&w1_val), out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Instance;
    use crate::model::Model;

    fn cells(list: &[(usize, usize)]) -> Vec<Cell> {
        list.iter().map(|&(row, col)| Cell { row, col }).collect()
    }

    #[test]
    fn two_by_two_is_its_own_combination() {
        let a = SymbolMatrix::new(2, 2);
        let d = Placement {
            plus: cells(&[(1, 1), (2, 2)]),
            minus: cells(&[(1, 2), (2, 1)]),
        };
        let comb = rewrite_to_two_by_two(&d, &a).unwrap();
        assert_eq!(comb.len(), 1);
        assert!(comb.terms[0].coefficient.is_one());
        assert!(comb.expands_to(&a.symbol(1, 1).mul(&a.symbol(2, 2)), &a.symbol(1, 2).mul(&a.symbol(2, 1))));
    }

    #[test]
    fn three_by_three_takes_two_minors() {
        let a = SymbolMatrix::new(3, 3);
        // a11 a22 a33 - a12 a23 a31
        let d = Placement {
            plus: cells(&[(1, 1), (2, 2), (3, 3)]),
            minus: cells(&[(1, 2), (2, 3), (3, 1)]),
        };
        let comb = rewrite_to_two_by_two(&d, &a).unwrap();
        assert_eq!(comb.len(), 2);
        let plus = product(&a, &d.plus).unwrap();
        let minus = product(&a, &d.minus).unwrap();
        assert!(comb.expands_to(&plus, &minus));
        // (a11 a22 - a21 a12) a33 + a12 (a21 a33 - a23 a31)
        let shown = comb.render(&|m| a.render(m));
        assert_eq!(
            shown,
            "+ a33 * (a11*a22 - a12*a21)    [2x2 minor]\n+ a12 * (a21*a33 - a23*a31)    [2x2 minor]\n"
        );
    }

    #[test]
    fn factored_branch_on_block_diagonal_four_by_four() {
        // a d e h - b c g f on [[a b . .] [c d . .] [. . e f] [. . g h]]
        let a = SymbolMatrix::new(4, 4);
        let d = Placement {
            plus: cells(&[(1, 1), (2, 2), (3, 3), (4, 4)]),
            minus: cells(&[(1, 2), (2, 1), (4, 3), (3, 4)]),
        };
        let comb = rewrite_to_two_by_two(&d, &a).unwrap();
        let plus = product(&a, &d.plus).unwrap();
        let minus = product(&a, &d.minus).unwrap();
        assert!(comb.expands_to(&plus, &minus));
        // (ad - bc) eh + bc (eh - gf)
        assert_eq!(comb.len(), 2);
        assert_eq!(comb.terms[1].coefficient, a.symbol(1, 2).mul(&a.symbol(2, 1)));
    }

    #[test]
    fn recursion_through_every_size() {
        let a = SymbolMatrix::new(5, 5);
        // cyclic shift: a11 a22 a33 a44 a55 - a12 a23 a34 a45 a51
        let d = Placement {
            plus: cells(&[(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]),
            minus: cells(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]),
        };
        let comb = rewrite_to_two_by_two(&d, &a).unwrap();
        assert_eq!(comb.len(), 4);
        assert!(comb.expands_to(&product(&a, &d.plus).unwrap(), &product(&a, &d.minus).unwrap()));
    }

    #[test]
    fn rejects_non_binary_cells() {
        let a = SymbolMatrix::new(3, 3);
        let d = Placement {
            plus: cells(&[(1, 1), (2, 2)]),
            minus: cells(&[(1, 2), (3, 1)]),
        };
        assert_eq!(rewrite_to_two_by_two(&d, &a), Err(RewriteError::NotBinary));
    }

    fn counter() -> Model {
        Model::convention(Instance::from_parts(3, &[(&[1, 2], 2), (&[2, 3], 2), (&[1, 3], 2)]).unwrap()).unwrap()
    }

    #[test]
    fn counter_x_quasi_minor() {
        let m = counter();
        let f = m
            .ring
            .parse_binomial("x2*T[x2*x3,t2]*T[x1^2,t3] - x1*T[x2^2,t2]*T[x1*x3,t3]")
            .unwrap();
        let comb = rewrite_fiber_type(&f, &m.matrix, &m.ring).unwrap();
        assert!(comb.expands_to(f.lead(), f.trail()));
        for t in &comb.terms {
            let x_free = m.ring.is_x_free(t.generator.lead()) && m.ring.is_x_free(t.generator.trail());
            assert!(x_free || t.kind == GeneratorKind::XMinor);
        }
        // V_1 never shares a row with x_j here, so both steps take the
        // second branch
        assert_eq!(
            comb.render(&|u| m.ring.render(u)),
            "- T[x1^2,t3] * (T[x2^2,t2]*x3 - T[x2*x3,t2]*x2)    [2x2 x-minor]\n\
             + T[x2^2,t2] * (T[x1^2,t3]*x3 - T[x1*x3,t3]*x1)    [2x2 x-minor]\n"
        );
    }

    #[test]
    fn x_minor_is_its_own_combination() {
        let m = counter();
        let f = m.ring.parse_binomial("x1*T[x1*x2,t1] - x2*T[x1^2,t1]").unwrap();
        let comb = rewrite_fiber_type(&f, &m.matrix, &m.ring).unwrap();
        assert_eq!(comb.len(), 1);
        assert_eq!(comb.terms[0].generator, f);
        assert_eq!(comb.terms[0].kind, GeneratorKind::XMinor);
    }

    #[test]
    fn rejects_x_free_input() {
        let m = counter();
        let f = m.ring.parse_binomial("T[x1^2,t1]*T[x2^2,t1] - T[x1*x2,t1]^2").unwrap();
        assert_eq!(rewrite_fiber_type(&f, &m.matrix, &m.ring), Err(RewriteError::NotXQuasiMinor));
    }
}
