//! An instance together with its term order, ring and quasi-matrix `C_a`.

use crate::algebra::{Ring, TermOrder};
use crate::error::Result;
use crate::ideal::{term_order, Instance, Options};
use crate::quasi_matrix::{build_c, QuasiMatrix};

#[derive(Clone, Debug)]
pub struct Model {
    pub instance: Instance,
    pub ring: Ring,
    pub matrix: QuasiMatrix,
}

impl Model {
    pub fn new(instance: Instance, order: TermOrder) -> Result<Model> {
        let tvars = instance.t_variables(&order);
        let ring = Ring::new(instance.n, instance.r(), &tvars, order)?;
        let matrix = build_c(&instance, ring.order());
        Ok(Model {
            instance,
            ring,
            matrix,
        })
    }

    /// The default order: `x_1 ≻ … ≻ x_n`, T-variables above x-variables.
    pub fn convention(instance: Instance) -> Result<Model> {
        let order = TermOrder::convention(instance.n);
        Model::new(instance, order)
    }

    pub fn with_options(instance: Instance, options: &Options) -> Result<Model> {
        let order = term_order(instance.n, options)?;
        Model::new(instance, order)
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn n(&self) -> usize {
        self.instance.n
    }

    pub fn r(&self) -> usize {
        self.instance.r()
    }
}
