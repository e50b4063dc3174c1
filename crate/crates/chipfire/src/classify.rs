//! Classifying configurations by coset of im(L) and locating each class's
//! distinguished members.
//!
//! Labels come from the Smith normal form U*L*V = D of L: the residues of
//! U*f modulo the invariant factors identify the coset of f in coker(L), and
//! there are |det L| of them. Every class owns exactly one critical
//! configuration (stabilization of any large enough member) and one
//! superstable configuration (obtained here by energy descent from the
//! critical one, and independently by the brute-force energy minimizer).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::{Policy, DEFAULT_BOX_CAP};
use crate::error::{Error, Result};
use crate::exact::{norm_sq, sub_vec, to_rational_vec, Int, IntVector, Rational};
use crate::pairing::{ConfigS, Pairing};

/// The energy ball search refuses to enumerate more scripts than this.
pub const DEFAULT_BALL_CAP: u64 = 10_000_000;

/// Coset of im(L) in Z^n, named by residues of U*f modulo the invariant
/// factors; each residue lies in [0, d_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel(IntVector);

impl CosetLabel {
    pub fn new(residues: IntVector) -> Self {
        CosetLabel(residues)
    }

    pub fn from_i64s(residues: &[i64]) -> Self {
        CosetLabel(residues.iter().copied().map(Int::from).collect())
    }

    pub fn residues(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub label: CosetLabel,
    pub critical: ConfigS,
    pub superstable: ConfigS,
    pub energy_of_superstable: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub holds: bool,
    /// First dual-of-critical that is not superstable, in label order.
    pub counterexample: Option<ConfigS>,
}

impl Pairing {
    /// Residues of U*f modulo the invariant factors of L.
    pub fn coset_label(&self, f: &ConfigS) -> Result<CosetLabel> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.len(),
            });
        }
        let uf = self.smith().u.mul_vec(f.entries())?;
        let residues = uf
            .iter()
            .zip(self.smith().invariant_factors())
            .map(|(a, d)| a.mod_floor(&d))
            .collect();
        Ok(CosetLabel(residues))
    }

    /// Every label in ascending lexicographic order; there are |det L|.
    pub fn all_labels(&self) -> Vec<CosetLabel> {
        let d = self.smith().invariant_factors();
        let n = d.len();
        let mut cur = vec![Int::zero(); n];
        let mut out = Vec::new();
        loop {
            out.push(CosetLabel(cur.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < d[k] {
                    break;
                }
                cur[k] = Int::zero();
            }
        }
    }

    fn check_label(&self, label: &CosetLabel) -> Result<()> {
        if label.len() != self.dim() {
            return Err(Error::UnknownLabel);
        }
        for (r, d) in label
            .residues()
            .iter()
            .zip(self.smith().invariant_factors())
        {
            if r.is_negative() || *r >= d {
                return Err(Error::UnknownLabel);
            }
        }
        Ok(())
    }

    /// A member of the labelled class on which every site is ready.
    ///
    /// U^-1 * residues hits the right coset; translating by multiples of
    /// L*u (u the integer witness) moves the R-view state up by kappa per
    /// step without leaving the class, so a large enough multiple clears
    /// every firing threshold.
    pub fn find_valid_representative(&self, label: &CosetLabel) -> Result<ConfigS> {
        self.check_label(label)?;
        let r = self.u_inv().mul_vec(label.residues())?;
        let x0 = self.n_inv().mul_vec(&to_rational_vec(&r))?;
        let kappa = Rational::from_integer(self.witness().kappa.clone());
        let mut need = Int::zero();
        for (i, x) in x0.iter().enumerate() {
            let gap = (self.m().get(i, i) - x) / &kappa;
            let steps = gap.ceil().to_integer();
            if steps > need {
                need = steps;
            }
        }
        let lu = self.l().mul_vec(&self.witness().u)?;
        let f: IntVector = r.iter().zip(&lu).map(|(a, b)| a + b * &need).collect();
        let f = ConfigS::new(f);
        debug_assert_eq!(self.coset_label(&f).unwrap(), *label);
        debug_assert!((0..self.dim()).all(|i| self.can_fire(&f, i).unwrap()));
        Ok(f)
    }

    /// The unique stable configuration reached from high up in the class.
    pub fn critical_config(&self, label: &CosetLabel) -> Result<ConfigS> {
        let rep = self.find_valid_representative(label)?;
        Ok(self.stabilize(&rep, Policy::LowestIndex)?.stable_config)
    }

    /// E(f) = |L^-1 f|^2, exact.
    pub fn energy(&self, f: &ConfigS) -> Result<Rational> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.len(),
            });
        }
        let c = self.l_inv().mul_vec(&to_rational_vec(f.entries()))?;
        Ok(norm_sq(&c))
    }

    /// The unique superstable configuration of the labelled class.
    pub fn superstable_config(&self, label: &CosetLabel) -> Result<ConfigS> {
        self.superstable_config_capped(label, DEFAULT_BOX_CAP)
    }

    /// Energy descent: start at the critical configuration and repeatedly
    /// apply the least valid script. Each step drops the energy by at least
    /// |z|^2 >= 1, so the walk stops, and it can only stop on the class's
    /// superstable member.
    pub fn superstable_config_capped(&self, label: &CosetLabel, box_cap: u64) -> Result<ConfigS> {
        let mut c = self.critical_config(label)?;
        loop {
            let check = self.is_superstable_capped(&c, box_cap)?;
            match check.violation {
                None => return Ok(c),
                Some(z) => {
                    let lz = self.l().mul_vec(z.entries())?;
                    c = ConfigS::new(sub_vec(c.entries(), &lz));
                }
            }
        }
    }

    /// Independent oracle for the superstable member: enumerate every class
    /// member with energy at most E(f) and keep the minimizer.
    ///
    /// Members of the class are f - L*z. Writing c = L^-1 f, the energy of
    /// f - L*z is |c - z|^2, so any member at most as energetic as f has z
    /// inside the ball of radius sqrt(E(f)) around c, which the integer box
    /// below covers completely.
    pub fn energy_minimizer_bruteforce(&self, f: &ConfigS, ball_cap: u64) -> Result<ConfigS> {
        if !self.in_s_plus(f)? {
            return Err(Error::InvalidConfiguration);
        }
        let c = self.l_inv().mul_vec(&to_rational_vec(f.entries()))?;
        let budget = norm_sq(&c);
        let radius = rational_sqrt_ceil(&budget);
        let lo: IntVector = c
            .iter()
            .map(|ci| (ci - &radius).ceil().to_integer())
            .collect();
        let hi: IntVector = c
            .iter()
            .map(|ci| (ci + &radius).floor().to_integer())
            .collect();
        let mut volume = Int::one();
        for (l, h) in lo.iter().zip(&hi) {
            volume *= h - l + 1;
        }
        if volume > Int::from(ball_cap) {
            return Err(Error::BallTooLarge {
                volume,
                cap: ball_cap,
            });
        }
        let mut z = vec![Int::zero(); self.dim()];
        let mut best: Option<(Rational, ConfigS)> = None;
        self.ball_scan(f, &lo, &hi, 0, &mut z, &mut best)?;
        let (_, minimizer) = best.expect("z = 0 always qualifies");
        Ok(minimizer)
    }

    fn ball_scan(
        &self,
        f: &ConfigS,
        lo: &[Int],
        hi: &[Int],
        k: usize,
        z: &mut IntVector,
        best: &mut Option<(Rational, ConfigS)>,
    ) -> Result<()> {
        if k == lo.len() {
            let lz = self.l().mul_vec(z)?;
            let g = ConfigS::new(sub_vec(f.entries(), &lz));
            if self.in_s_plus(&g)? {
                let e = self.energy(&g)?;
                let better = match best {
                    None => true,
                    Some((be, _)) => e < *be,
                };
                if better {
                    *best = Some((e, g));
                }
            }
            return Ok(());
        }
        let mut v = lo[k].clone();
        while v <= hi[k] {
            z[k] = v.clone();
            self.ball_scan(f, lo, hi, k + 1, z, best)?;
            v += 1;
        }
        z[k] = Int::zero();
        Ok(())
    }

    pub fn all_class_reports(&self, det_cap: u64) -> Result<Vec<ClassReport>> {
        self.all_class_reports_capped(det_cap, DEFAULT_BOX_CAP)
    }

    /// One report per coset, in ascending label order.
    pub fn all_class_reports_capped(&self, det_cap: u64, box_cap: u64) -> Result<Vec<ClassReport>> {
        if *self.det_l_abs() > Int::from(det_cap) {
            return Err(Error::DeterminantExceedsCap {
                det: self.det_l_abs().clone(),
                cap: det_cap,
            });
        }
        self.all_labels()
            .into_iter()
            .map(|label| {
                let critical = self.critical_config(&label)?;
                let superstable = self.superstable_config_capped(&label, box_cap)?;
                let energy_of_superstable = self.energy(&superstable)?;
                Ok(ClassReport {
                    label,
                    critical,
                    superstable,
                    energy_of_superstable,
                })
            })
            .collect()
    }

    pub fn check_duality(&self, det_cap: u64) -> Result<DualityReport> {
        self.check_duality_capped(det_cap, DEFAULT_BOX_CAP)
    }

    /// Test whether c -> (L_11 - 1, ..., L_nn - 1) - c maps the criticals
    /// onto the superstables, as it does for reduced Laplacians of
    /// undirected graphs paired with themselves.
    pub fn check_duality_capped(&self, det_cap: u64, box_cap: u64) -> Result<DualityReport> {
        let reports = self.all_class_reports_capped(det_cap, box_cap)?;
        let top: IntVector = self.l().diagonal().iter().map(|d| d - Int::one()).collect();
        let superstables: std::collections::BTreeSet<&ConfigS> =
            reports.iter().map(|r| &r.superstable).collect();
        for report in &reports {
            let dual = ConfigS::new(sub_vec(&top, report.critical.entries()));
            if !superstables.contains(&dual) {
                return Ok(DualityReport {
                    holds: false,
                    counterexample: Some(dual),
                });
            }
        }
        Ok(DualityReport {
            holds: true,
            counterexample: None,
        })
    }
}

// Smallest nonnegative integer s with s^2 >= b.
fn rational_sqrt_ceil(b: &Rational) -> Rational {
    debug_assert!(!b.is_negative());
    let floor = b.floor().to_integer();
    let mut s = num_integer::Roots::sqrt(&floor);
    while Rational::from_integer(&s * &s) < *b {
        s += 1;
    }
    Rational::from_integer(s)
}
