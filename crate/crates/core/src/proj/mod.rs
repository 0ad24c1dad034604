//! The blowup `Proj` of a Rees algebra: affine charts, sheafification, and
//! cohomology of twisted sheaves computed from graded pieces.

mod cohomology;
mod pushforward;

use serde::Serialize;

use crate::base::{BaseRing, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{GradedModule, GradedRing};
use crate::groebner::Limits;
use crate::poly::{Poly, Vector};

pub use cohomology::{
    bound_evidence, cohomology_table, higher_cohomology, induced_map_is_iso, sections_with_comparison, stability_bound, stage_complex, twisted_sections, BoundCertificate, BoundEvidence,
    CohomologyEntry, CohomologyTable, StageComplex,
};
pub use pushforward::{pushforward_tilde, Pushforward};

/// Chart `y_i != 0`: `R[z_j : j != i] / (L with y_i = 1, y_j = z_j)`.
#[derive(Clone, Debug)]
pub struct Chart<F: Field> {
    pub index: usize,
    pub ring: BaseRing<F>,
    /// The chart ideal is the unit ideal: the chart is empty.
    pub empty: bool,
    images: Vec<Poly<F>>,
}

impl<F: Field> Chart<F> {
    /// Image of an element of the Rees ring under `y_i -> 1`, `y_j -> z_j`.
    pub fn localize(&self, p: &Poly<F>) -> Poly<F> {
        self.ring.reduce(&p.substitute(&self.images, self.ring.nvars()))
    }

    pub fn localize_vector(&self, v: &[Poly<F>]) -> Vector<F> {
        v.iter().map(|p| self.localize(p)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ChartAtlas<F: Field> {
    pub charts: Vec<Chart<F>>,
}

impl<F: Field> ChartAtlas<F> {
    pub fn is_empty_space(&self) -> bool {
        self.charts.iter().all(|c| c.empty)
    }
}

/// Summary of a chart for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ChartSummary {
    pub index: usize,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub empty: bool,
}

impl<F: Field> Chart<F> {
    pub fn summary(&self) -> ChartSummary {
        ChartSummary { index: self.index, variables: self.ring.names().to_vec(), relations: self.ring.ideal().gens.iter().map(|g| self.ring.display(g)).collect(), empty: self.empty }
    }
}

pub fn blowup_charts<F: Field>(rees: &GradedRing<F>, limits: Limits) -> Result<ChartAtlas<F>> {
    if rees.has_u {
        return Err(AlgebraError::Malformed("charts are taken on the Rees algebra, not the extended one".into()));
    }
    let k = rees.nbase();
    let ny = rees.ny();
    let mut charts = Vec::new();
    for i in 0..ny {
        let mut names: Vec<String> = rees.base.names().to_vec();
        let mut images: Vec<Poly<F>> = Vec::with_capacity(rees.nvars());
        let nv = k + ny - 1;
        for v in 0..k {
            images.push(Poly::var(nv, v));
        }
        let mut next = k;
        for j in 0..ny {
            if j == i {
                images.push(Poly::one(nv));
            } else {
                let mut name = format!("z{j}");
                while names.contains(&name) {
                    name.push('_');
                }
                names.push(name);
                images.push(Poly::var(nv, next));
                next += 1;
            }
        }
        let rels: Vec<Poly<F>> = rees.ideal().gens.iter().map(|g| g.substitute(&images, nv)).collect();
        let ring = BaseRing::new(names, rels, limits)?;
        let empty = ring.is_zero_ring();
        charts.push(Chart { index: i, ring, empty, images });
    }
    Ok(ChartAtlas { charts })
}

/// `M / (y_i - 1) M`, the sections of `M~` over the chart.
pub fn sheaf_restrict<F: Field>(m: &GradedModule<F>, chart: &Chart<F>) -> Subquotient<F> {
    let rels = m.rels.iter().map(|r| chart.localize_vector(r)).collect();
    Subquotient::cokernel(m.rank(), chart.ring.nvars(), rels)
}

pub fn sheaf_is_zero<F: Field>(m: &GradedModule<F>, atlas: &ChartAtlas<F>) -> Result<bool> {
    for c in &atlas.charts {
        if !sheaf_restrict(m, c).is_zero(&c.ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
