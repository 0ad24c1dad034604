use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::base::{self, Subquotient};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::graded::{DegreeWindow, GradedModule, GradedPieces, GradedRing};
use crate::groebner::Lifter;
use crate::poly::{vector, Poly, Vector};

use super::cohomology::{stable_at, stage_complex, StageComplex};

struct Level<F: Field> {
    cur: StageComplex<F>,
    next: StageComplex<F>,
    h: Subquotient<F>,
    /// Lifter for the stage `D + 1` homology, and its generators pulled back to stage `D`.
    next_lifter: Lifter<F>,
    back: Vec<Vector<F>>,
}

/// `H^i(Y, M~(n))` assembled into a graded module over the extended Rees
/// algebra: the piece in degree `n >= 0` is `H^i(Y, M~(n))`, pieces in
/// degrees `n <= 0` all equal the piece in degree 0, `u` acts through
/// `O(n) -> O(n-1)` and `y_i` through multiplication by `y_i`.
///
/// Every piece is read off the Čech complex at one common exponent `D`,
/// which is checked to be a stable exponent for each degree used.
pub struct Pushforward<F: Field> {
    ext: Arc<GradedRing<F>>,
    module: GradedModule<F>,
    pub index: usize,
    pub stage: u32,
    levels: Mutex<HashMap<i64, Arc<Level<F>>>>,
}

impl<F: Field> Pushforward<F> {
    fn vanishes(&self) -> bool {
        self.index >= self.module.ring.ny()
    }

    fn level(&self, n: i64) -> Result<Arc<Level<F>>> {
        let n = n.max(0);
        if let Some(l) = self.levels.lock().unwrap().get(&n) {
            return Ok(l.clone());
        }
        let m = &self.module;
        let base = &m.ring.base;
        let cur = stage_complex(m, n, self.stage)?;
        let next = stage_complex(m, n, self.stage + 1)?;
        let h = cur.homology(base, self.index)?;
        let nh = next.homology(base, self.index)?;
        let imgs = cur.transition(m, &next, self.index, &h.gens)?;
        if !base::is_iso(base, &h, &nh, &imgs)? {
            return Err(AlgebraError::Inconclusive(format!("exponent {} is not stable for H^{} at twist {n}", self.stage, self.index)));
        }
        let back = base::inverse(base, &h, &nh, &imgs)?;
        let next_lifter = nh.lifter(base)?;
        let l = Arc::new(Level { cur, next, h, next_lifter, back });
        self.levels.lock().unwrap().insert(n, l.clone());
        Ok(l)
    }

    fn step_y(&self, j: usize, e: i64, vs: Vec<Vector<F>>) -> Result<Vec<Vector<F>>> {
        if e < 0 {
            let g = &self.module.ring.gens[j];
            return Ok(vs.iter().map(|v| self.module.ring.base.reduce_vector(&vector::scale(v, g))).collect());
        }
        let src = self.level(e)?;
        let tgt = self.level(e + 1)?;
        let ring = &self.module.ring;
        src.cur.block_mul(&self.module, &tgt.cur, self.index, |_| ring.var(ring.y(j)), &vs)
    }

    fn step_u(&self, e: i64, vs: Vec<Vector<F>>) -> Result<Vec<Vector<F>>> {
        if e <= 0 {
            return Ok(vs);
        }
        let src = self.level(e)?;
        let tgt = self.level(e - 1)?;
        let k = self.module.ring.nbase();
        let ws = src.cur.u_map(&self.module, &self.module.ring.gens, &tgt.next, self.index, &vs)?;
        let rank = tgt.h.rank;
        ws.iter()
            .map(|w| {
                let c = tgt.next_lifter.lift(w)?.ok_or_else(|| AlgebraError::Malformed("u-image is not a cocycle".into()))?;
                Ok(self.module.ring.base.reduce_vector(&vector::combine(&c, &tgt.back, rank, k)))
            })
            .collect()
    }

    /// Canonical map `Ã -> f~_* O_Y` in degree `n`, on the pure basis of `Ã_n`.
    /// Defined when the module is the Rees ring itself and `index == 0`.
    pub fn unit_at(&self, n: i64) -> Result<Vec<Vector<F>>> {
        let m = &self.module;
        if self.index != 0 || m.twists != [0] || !m.rels.is_empty() {
            return Err(AlgebraError::Malformed("the unit map needs O_Y and index 0".into()));
        }
        let rees = &m.ring;
        let l = self.level(n)?;
        let basis = self.ext.pure_monomials(n);
        if n <= 0 {
            let one = l.cur.canonical_vector(m, &[Poly::one(rees.nvars())])?;
            return Ok(vec![one; basis.len()]);
        }
        let to_rees: Vec<usize> = (0..self.ext.nvars()).map(|i| i.min(rees.nvars() - 1)).collect();
        basis
            .iter()
            .map(|mu| {
                let p = Poly::monomial(mu.clone(), F::one()).rename(&to_rees, rees.nvars());
                l.cur.canonical_vector(m, &[p])
            })
            .collect()
    }
}

impl<F: Field> GradedPieces<F> for Pushforward<F> {
    fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ext
    }

    fn piece(&self, d: i64) -> Result<Subquotient<F>> {
        if self.vanishes() {
            return Ok(Subquotient::zero());
        }
        Ok(self.level(d)?.h.clone())
    }

    fn act(&self, a: &Poly<F>, d: i64) -> Result<Vec<Vector<F>>> {
        if self.vanishes() {
            return Ok(Vec::new());
        }
        let ext = &self.ext;
        let w = ext.degree_of(a).unwrap_or(0);
        let gens = self.piece(d)?.gens;
        let target_rank = self.piece(d + w)?.rank;
        let k = ext.nbase();
        let mut out = vec![vector::zero(target_rank, k); gens.len()];
        for (mu, c) in ext.pure_form(a) {
            let mut vs = gens.clone();
            let mut e = d;
            let ue = mu.0[ext.u()];
            if ext.has_u && ue > 0 {
                for _ in 0..ue {
                    vs = self.step_u(e, vs)?;
                    e -= 1;
                }
            } else {
                for j in 0..ext.ny() {
                    for _ in 0..mu.0[ext.y(j)] {
                        vs = self.step_y(j, e, vs)?;
                        e += 1;
                    }
                }
            }
            for (o, v) in out.iter_mut().zip(vs) {
                *o = vector::add(o, &vector::scale(&v, &c));
            }
        }
        Ok(out.into_iter().map(|v| ext.base.reduce_vector(&v)).collect())
    }
}

/// `f~_*` of `M~` in cohomological degrees `0..=depth`, with a common
/// exponent chosen from the degrees `0..=window.hi + 1`.
pub fn pushforward_tilde<F: Field>(m: &GradedModule<F>, ext: &Arc<GradedRing<F>>, window: DegreeWindow, depth: usize, max_steps: usize) -> Result<Vec<Pushforward<F>>> {
    if m.ring.has_u || !ext.has_u {
        return Err(AlgebraError::Malformed("pushforward goes from the Rees algebra to the extended one".into()));
    }
    let low = m.twists.iter().copied().min().unwrap_or(0);
    let mut out = Vec::new();
    for i in 0..=depth {
        let mut stage = 1u32;
        if i < m.ring.ny() {
            for n in 0..=window.hi.max(0) + 1 {
                let start = (low - n).max(1) as u32;
                stage = stage.max(stable_at(m, n, i, start, max_steps)?.entry.exponent);
            }
        }
        out.push(Pushforward { ext: ext.clone(), module: m.clone(), index: i, stage, levels: Mutex::new(HashMap::new()) });
    }
    Ok(out)
}
