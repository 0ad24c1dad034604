use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::base::Subquotient;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::mono::monomials_of_degree;
use crate::poly::{vector, Poly, Vector};

use super::module::GradedPieces;
use super::ring::GradedRing;

/// Free module `⊕ S(-a_j)` over a ring embedded in `R[t, t^-1]`, with pieces
/// computed inside `R^rank`: component `j` of degree `d` is `I^(d - a_j)`, or
/// `R` when `d <= a_j` and `u` is present.
pub struct EmbeddedFree<F: Field> {
    ring: Arc<GradedRing<F>>,
    pub twists: Vec<i64>,
    powers: Mutex<HashMap<i64, Vec<Poly<F>>>>,
}

impl<F: Field> EmbeddedFree<F> {
    pub fn new(ring: Arc<GradedRing<F>>, twists: Vec<i64>) -> Result<Self> {
        if !ring.embedded {
            return Err(AlgebraError::Malformed("ring does not embed into R[t, t^-1]".into()));
        }
        Ok(EmbeddedFree { ring, twists, powers: Mutex::new(HashMap::new()) })
    }

    /// Generators of `I^e` (products of the `g_i`, deduplicated, reduced).
    pub fn power_gens(&self, e: i64) -> Vec<Poly<F>> {
        if let Some(p) = self.powers.lock().unwrap().get(&e) {
            return p.clone();
        }
        let base = &self.ring.base;
        let mut out: Vec<Poly<F>> = Vec::new();
        if e <= 0 {
            out.push(base.one());
        } else {
            for a in monomials_of_degree(self.ring.ny(), e as u32) {
                let mut p = base.one();
                for (i, &c) in a.0.iter().enumerate() {
                    for _ in 0..c {
                        p = base.reduce(&p.mul(&self.ring.gens[i]));
                    }
                }
                if !p.is_zero() && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        self.powers.lock().unwrap().insert(e, out.clone());
        out
    }

    fn component_gens(&self, j: usize, d: i64) -> Vec<Poly<F>> {
        let e = d - self.twists[j];
        if e < 0 && !self.ring.has_u {
            return Vec::new();
        }
        self.power_gens(e)
    }
}

impl<F: Field> GradedPieces<F> for EmbeddedFree<F> {
    fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    fn piece(&self, d: i64) -> Result<Subquotient<F>> {
        let r = self.twists.len();
        let k = self.ring.nbase();
        let mut gens = Vec::new();
        for j in 0..r {
            for g in self.component_gens(j, d) {
                let mut v = vector::zero(r, k);
                v[j] = g;
                gens.push(v);
            }
        }
        Ok(Subquotient::new(r, gens, Vec::new()))
    }

    fn act(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>> {
        let phi = self.ring.to_laurent_coefficient(a);
        let piece = self.piece(d)?;
        Ok(piece.gens.iter().map(|v| v.iter().map(|p| self.ring.base.reduce(&p.mul(&phi))).collect()).collect())
    }
}
