//! Firing dynamics: single steps, multistep scripts, stabilization, and the
//! superstability test.
//!
//! All state updates run in the R-view, where the firing rule is simply
//! x -> x - M*e_i and site i is ready exactly when x_i >= M_ii. The S-view
//! configuration is recovered at the end as f - L*z and cross-checked against
//! the R-view state.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{sub_vec, Int, IntVector, RatMatrix, RatVector, Rational};
use crate::pairing::{ConfigS, Pairing};

/// Stabilization gives up after this many single firings.
pub const DEFAULT_FIRING_CAP: u64 = 1_000_000;

/// The superstability box search refuses to enumerate more scripts than this.
pub const DEFAULT_BOX_CAP: u64 = 10_000_000;

/// Multiset of firings: entry i counts how often site i fired.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiringScript(IntVector);

impl FiringScript {
    pub fn new(entries: IntVector) -> Self {
        FiringScript(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        FiringScript(entries.iter().copied().map(Int::from).collect())
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn has_negative_entry(&self) -> bool {
        self.0.iter().any(Signed::is_negative)
    }

    pub fn into_inner(self) -> IntVector {
        self.0
    }
}

impl std::fmt::Display for FiringScript {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Order in which ready sites are fired. Any choice reaches the same
/// stabilization, which the test suite checks at length; the knob exists so
/// that claim can be exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    LowestIndex,
    HighestIndex,
    /// Uniform choice among ready sites from a seeded generator, so runs
    /// with the same seed are reproducible.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationResult {
    pub stable_config: ConfigS,
    pub total_firings: FiringScript,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperstableCheck {
    pub is_superstable: bool,
    /// Per-coordinate script bounds floor(M^-1 * x) that were searched.
    pub box_bounds: IntVector,
    pub box_volume: Int,
    /// Lexicographically least valid nonzero script, when one exists.
    pub violation: Option<FiringScript>,
}

impl Pairing {
    fn r_state(&self, f: &ConfigS) -> Result<RatVector> {
        let x = self.to_r_coords(f)?;
        if x.entries().iter().any(Rational::is_negative) {
            return Err(Error::InvalidConfiguration);
        }
        Ok(x.into_inner())
    }

    /// Whether site i is ready: x_i >= M_ii in the R-view.
    pub fn can_fire(&self, f: &ConfigS, i: usize) -> Result<bool> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                site: i,
                dim: self.dim(),
            });
        }
        let x = self.r_state(f)?;
        let ready = x[i] >= *self.m().get(i, i);
        debug_assert_eq!(ready, {
            let fired = ConfigS::new(sub_vec(f.entries(), &self.l().column(i)));
            self.in_s_plus(&fired).unwrap()
        });
        Ok(ready)
    }

    /// f - L*e_i, rejecting unready sites.
    pub fn fire(&self, f: &ConfigS, i: usize) -> Result<ConfigS> {
        if !self.can_fire(f, i)? {
            let x = self.r_state(f)?;
            return Err(Error::CannotFire {
                site: i,
                deficit: &x[i] - self.m().get(i, i),
            });
        }
        Ok(ConfigS::new(sub_vec(f.entries(), &self.l().column(i))))
    }

    /// Whether the whole script z >= 0 can fire at once: M*z <= x entrywise.
    pub fn can_multifire(&self, f: &ConfigS, z: &FiringScript) -> Result<bool> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: z.len(),
            });
        }
        if z.has_negative_entry() {
            return Err(Error::NegativeScript);
        }
        let x = self.r_state(f)?;
        let zr: RatVector = z
            .entries()
            .iter()
            .map(|e| Rational::from_integer(e.clone()))
            .collect();
        let mz = self.m().mul_vec(&zr)?;
        Ok(mz.iter().zip(&x).all(|(a, b)| a <= b))
    }

    pub fn is_stable(&self, f: &ConfigS) -> Result<bool> {
        let x = self.r_state(f)?;
        Ok((0..self.dim()).all(|i| x[i] < *self.m().get(i, i)))
    }

    pub fn stabilize(&self, f: &ConfigS, policy: Policy) -> Result<StabilizationResult> {
        self.stabilize_capped(f, policy, DEFAULT_FIRING_CAP)
    }

    pub fn stabilize_capped(
        &self,
        f: &ConfigS,
        policy: Policy,
        cap: u64,
    ) -> Result<StabilizationResult> {
        let mut x = self.r_state(f)?;
        let n = self.dim();
        let diag = self.m().diagonal();
        let mut z = vec![Int::zero(); n];
        let mut rng = match policy {
            Policy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut steps = 0u64;
        loop {
            let ready: Vec<usize> = (0..n).filter(|&i| x[i] >= diag[i]).collect();
            let Some(&first) = ready.first() else { break };
            let i = match policy {
                Policy::LowestIndex => first,
                Policy::HighestIndex => *ready.last().expect("nonempty"),
                Policy::Random(_) => {
                    let rng = rng.as_mut().expect("seeded above");
                    ready[rng.gen_range(0..ready.len())]
                }
            };
            if steps == cap {
                return Err(Error::IterationCapExceeded { cap });
            }
            steps += 1;
            for (xe, me) in x.iter_mut().zip(self.m().column(i)) {
                *xe -= me;
            }
            z[i] += 1;
        }
        let lz = self.l().mul_vec(&z)?;
        let stable_config = ConfigS::new(sub_vec(f.entries(), &lz));
        debug_assert_eq!(
            self.to_s_coords(&crate::pairing::ConfigR::new(x.clone()))
                .unwrap(),
            stable_config,
            "S-view and R-view stabilizations must agree"
        );
        debug_assert!(self.is_stable(&stable_config).unwrap());
        Ok(StabilizationResult {
            stable_config,
            total_firings: FiringScript::new(z),
            steps,
        })
    }

    pub fn is_superstable(&self, f: &ConfigS) -> Result<SuperstableCheck> {
        self.is_superstable_capped(f, DEFAULT_BOX_CAP)
    }

    /// Complete search for a valid nonzero script: any such z satisfies
    /// 0 <= z <= floor(M^-1 * x) coordinatewise because M^-1 >= 0, so the box
    /// below is exhaustive.
    pub fn is_superstable_capped(&self, f: &ConfigS, cap: u64) -> Result<SuperstableCheck> {
        let x = self.r_state(f)?;
        let bound_rat = self.m_inv().mul_vec(&x)?;
        let box_bounds: IntVector = bound_rat.iter().map(|b| b.floor().to_integer()).collect();
        debug_assert!(box_bounds.iter().all(|b| !b.is_negative()));
        let volume: Int = box_bounds.iter().map(|b| b + Int::one()).product();
        if volume > Int::from(cap) {
            return Err(Error::BoxTooLarge { volume, cap });
        }
        let bounds: Vec<u64> = box_bounds
            .iter()
            .map(|b| b.to_u64().expect("bounded by cap"))
            .collect();
        let mut z = vec![Int::zero(); self.dim()];
        let mut mz = vec![Rational::zero(); self.dim()];
        let violation =
            first_valid_script(self.m(), &x, &bounds, 0, &mut z, &mut mz).map(FiringScript::new);
        Ok(SuperstableCheck {
            is_superstable: violation.is_none(),
            box_bounds,
            box_volume: volume,
            violation,
        })
    }
}

// Depth-first over 0 <= z <= bounds in ascending lexicographic order,
// maintaining M*z incrementally. Returns the first valid nonzero script.
fn first_valid_script(
    m: &RatMatrix,
    x: &[Rational],
    bounds: &[u64],
    k: usize,
    z: &mut IntVector,
    mz: &mut RatVector,
) -> Option<IntVector> {
    if k == bounds.len() {
        if z.iter().all(Zero::is_zero) {
            return None;
        }
        if mz.iter().zip(x).all(|(a, b)| a <= b) {
            return Some(z.clone());
        }
        return None;
    }
    let col = m.column(k);
    for v in 0..=bounds[k] {
        if v > 0 {
            z[k] += 1;
            for (acc, c) in mz.iter_mut().zip(&col) {
                *acc += c;
            }
        }
        if let Some(found) = first_valid_script(m, x, bounds, k + 1, z, mz) {
            return Some(found);
        }
    }
    let reached = Rational::from_integer(Int::from(bounds[k]));
    for (acc, c) in mz.iter_mut().zip(&col) {
        *acc -= c * &reached;
    }
    z[k] = Int::zero();
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, IntMatrix};

    fn running() -> Pairing {
        Pairing::new(
            IntMatrix::from_i64s(&[&[2, -1, 1], &[-1, 2, -1], &[1, -1, 2]]),
            RatMatrix::from_i64s(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]),
        )
        .unwrap()
    }

    fn two_cycle_classical() -> Pairing {
        let l = IntMatrix::from_i64s(&[&[2, -1], &[-1, 2]]);
        Pairing::new(l.clone(), l.to_rational()).unwrap()
    }

    #[test]
    fn readiness_follows_the_threshold() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, -1, 5]);
        // x = (5, 1, 1), thresholds are the diagonal (3, 3, 3)
        assert!(p.can_fire(&f, 0).unwrap());
        assert!(!p.can_fire(&f, 1).unwrap());
        assert!(!p.can_fire(&f, 2).unwrap());
    }

    #[test]
    fn can_fire_rejects_bad_input() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, -1, 5]);
        assert!(matches!(
            p.can_fire(&f, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        let outside = ConfigS::from_i64s(&[0, 0, 1]);
        assert_eq!(
            p.can_fire(&outside, 0).unwrap_err(),
            Error::InvalidConfiguration
        );
    }

    #[test]
    fn fire_subtracts_a_column_of_l() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, -1, 5]);
        assert_eq!(p.fire(&f, 0).unwrap(), ConfigS::from_i64s(&[4, 0, 4]));
        assert!(matches!(
            p.fire(&f, 1),
            Err(Error::CannotFire { site: 1, .. })
        ));
    }

    #[test]
    fn classical_fire_matches_chip_counting() {
        let p = two_cycle_classical();
        let f = ConfigS::from_i64s(&[2, 0]);
        assert_eq!(p.fire(&f, 0).unwrap(), ConfigS::from_i64s(&[0, 1]));
    }

    #[test]
    fn multifire_examples() {
        let p = running();
        let zero = ConfigS::from_i64s(&[0, 0, 0]);
        assert!(p
            .can_multifire(&zero, &FiringScript::from_i64s(&[0, 0, 0]))
            .unwrap());
        for z in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 1, 2]] {
            assert!(
                !p.can_multifire(&zero, &FiringScript::from_i64s(&z))
                    .unwrap(),
                "{z:?} should not fire from the origin"
            );
        }
        let f = ConfigS::from_i64s(&[6, -1, 5]);
        assert!(p
            .can_multifire(&f, &FiringScript::from_i64s(&[1, 0, 0]))
            .unwrap());
        // (4,-1,4) is stable yet admits the simultaneous script (1,0,1)
        let g = ConfigS::from_i64s(&[4, -1, 4]);
        assert!(p.is_stable(&g).unwrap());
        assert!(p
            .can_multifire(&g, &FiringScript::from_i64s(&[1, 0, 1]))
            .unwrap());
        assert_eq!(
            p.can_multifire(&g, &FiringScript::from_i64s(&[-1, 0, 0]))
                .unwrap_err(),
            Error::NegativeScript
        );
    }

    #[test]
    fn stabilize_already_stable_is_a_no_op() {
        let p = running();
        let f = ConfigS::from_i64s(&[4, 0, 4]);
        let r = p.stabilize(&f, Policy::LowestIndex).unwrap();
        assert_eq!(r.stable_config, f);
        assert_eq!(r.steps, 0);
        assert!(r.total_firings.is_zero());
    }

    #[test]
    fn stabilize_single_step() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, -1, 5]);
        let r = p.stabilize(&f, Policy::LowestIndex).unwrap();
        assert_eq!(r.stable_config, ConfigS::from_i64s(&[4, 0, 4]));
        assert_eq!(r.total_firings, FiringScript::from_i64s(&[1, 0, 0]));
        assert_eq!(r.steps, 1);
    }

    #[test]
    fn stabilize_classical_two_sites() {
        let p = two_cycle_classical();
        let r = p
            .stabilize(&ConfigS::from_i64s(&[2, 2]), Policy::LowestIndex)
            .unwrap();
        assert_eq!(r.stable_config, ConfigS::from_i64s(&[1, 1]));
        assert_eq!(r.total_firings, FiringScript::from_i64s(&[1, 1]));
    }

    #[test]
    fn policies_reach_the_same_stabilization() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, 0, 6]);
        let base = p.stabilize(&f, Policy::LowestIndex).unwrap();
        for policy in [
            Policy::HighestIndex,
            Policy::Random(0),
            Policy::Random(1),
            Policy::Random(42),
        ] {
            let r = p.stabilize(&f, policy).unwrap();
            assert_eq!(r.stable_config, base.stable_config);
            assert_eq!(r.total_firings, base.total_firings);
        }
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let p = running();
        let f = ConfigS::from_i64s(&[6, 0, 6]);
        assert_eq!(
            p.stabilize_capped(&f, Policy::LowestIndex, 1).unwrap_err(),
            Error::IterationCapExceeded { cap: 1 }
        );
    }

    #[test]
    fn origin_is_superstable_with_unit_box() {
        let p = running();
        let check = p.is_superstable(&ConfigS::from_i64s(&[0, 0, 0])).unwrap();
        assert!(check.is_superstable);
        assert_eq!(check.box_volume, Int::one());
        assert_eq!(check.violation, None);
    }

    #[test]
    fn critical_of_the_origin_class_is_not_superstable() {
        let p = running();
        let check = p.is_superstable(&ConfigS::from_i64s(&[4, 0, 4])).unwrap();
        assert!(!check.is_superstable);
        assert_eq!(check.box_bounds, int_vec(&[2, 2, 2]));
        assert_eq!(check.violation, Some(FiringScript::from_i64s(&[0, 1, 1])));
    }

    #[test]
    fn stable_but_not_superstable() {
        let p = running();
        let check = p.is_superstable(&ConfigS::from_i64s(&[4, -1, 4])).unwrap();
        assert!(!check.is_superstable);
        assert_eq!(check.violation, Some(FiringScript::from_i64s(&[1, 0, 1])));
    }

    #[test]
    fn superstable_member_passes() {
        let p = running();
        let check = p.is_superstable(&ConfigS::from_i64s(&[2, 1, 2])).unwrap();
        assert!(check.is_superstable);
    }

    #[test]
    fn box_cap_is_enforced() {
        let p = running();
        let err = p
            .is_superstable_capped(&ConfigS::from_i64s(&[4, 0, 4]), 5)
            .unwrap_err();
        assert!(matches!(err, Error::BoxTooLarge { cap: 5, .. }));
    }

    #[test]
    fn superstable_requires_membership() {
        let p = running();
        assert_eq!(
            p.is_superstable(&ConfigS::from_i64s(&[0, 0, 1]))
                .unwrap_err(),
            Error::InvalidConfiguration
        );
    }
}
