//! Bogomolov–Gieseker and Hodge-index checks, and the kernel classes of the
//! four weak stability regimes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::charges::{ChargeSpec, Regime};
use crate::divisors::DivisorClass;
use crate::error::{Error, Result};
use crate::lattice::{ChernVector, Surface};
use crate::rational::{int, Rational};

/// Margin of an inequality `lhs ≤ rhs`: `slack = rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackReport {
    pub holds: bool,
    pub slack: Rational,
}

impl SlackReport {
    fn new(slack: Rational) -> Self {
        SlackReport {
            holds: !slack.is_negative(),
            slack,
        }
    }
}

impl Serialize for SlackReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SlackReport", 2)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("slack", &self.slack.to_string())?;
        st.end()
    }
}

fn require_positive_rank(v: &ChernVector) -> Result<()> {
    if v.r.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveRank(v.r.to_string()))
    }
}

/// The kernel generators of one regime, each annihilated by `charge`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub regime: Regime,
    pub generators: Vec<ChernVector>,
    /// A charge of the regime that kills every generator.
    pub charge: ChargeSpec,
}

impl KernelBasis {
    pub fn is_annihilated(&self, surface: &Surface) -> Result<bool> {
        for g in &self.generators {
            if !surface.eval(&self.charge, g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Serialize for KernelBasis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("KernelBasis", 2)?;
        st.serialize_field("regime", &self.regime)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

/// Result of the brute-force search for after-FM kernel line bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceKernel {
    /// Matching classes, sorted by their Θ-coefficient.
    pub classes: Vec<ChernVector>,
    /// The window `|a|, |b| ≤ bound` was too small to contain every
    /// solution, so `classes` may be incomplete.
    pub truncated: bool,
}

/// A basis of the purely numerical kernel `{v : Z(v) = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSublattice {
    /// Primitive integral vectors, first nonzero entry positive.
    pub basis: Vec<ChernVector>,
    /// The kernel at these parameter values is strictly larger than the
    /// kernel for generic parameters.
    pub exceeds_generic: bool,
}

impl Surface {
    /// `ch₂ ≤ ch₁²/(2ch₀)`.
    pub fn bg_standard(&self, v: &ChernVector) -> Result<SlackReport> {
        require_positive_rank(v)?;
        let c1 = v.ch1();
        let bound = self.intersect(&c1, &c1) / (int(2) * &v.r);
        Ok(SlackReport::new(bound - &v.s))
    }

    /// `ch₂^B ≤ (ch₁^B)²/(2ch₀) − ch₀ + 1/ch₀`, the K3 bound for
    /// µ-stable torsion-free sheaves.
    pub fn bg_sharp(&self, v: &ChernVector, b: &DivisorClass) -> Result<SlackReport> {
        self.require_k3()?;
        require_positive_rank(v)?;
        let vb = self.twist(v, b);
        let c1 = vb.ch1();
        let bound = self.intersect(&c1, &c1) / (int(2) * &vb.r) - &vb.r + vb.r.recip();
        Ok(SlackReport::new(bound - &vb.s))
    }

    /// `c² ≤ 0` for `c ⊥ H` with `H² > 0`.
    pub fn hodge_index_check(&self, h: &DivisorClass, c: &DivisorClass) -> Result<bool> {
        let h2 = self.intersect(h, h);
        if !h2.is_positive() {
            return Err(Error::NotBig(h2.to_string()));
        }
        let hc = self.intersect(h, c);
        if !hc.is_zero() {
            return Err(Error::NotOrthogonal(hc.to_string()));
        }
        Ok(!self.intersect(c, c).is_positive())
    }

    /// Generators of the kernel objects of `regime`, lifted to classes.
    pub fn classify_kernel(&self, regime: Regime) -> Result<KernelBasis> {
        self.require_k3()?;
        let ox_shift = ChernVector::structure_sheaf().shift();
        let o_theta = self.ch_section_sheaf(-1)?;
        let (generators, charge) = match regime {
            Regime::Origin => (vec![ox_shift, o_theta], ChargeSpec::Origin),
            Regime::VAxis => (vec![o_theta], ChargeSpec::VAxis { v: Rational::one() }),
            Regime::DAxis => (vec![ox_shift], ChargeSpec::DAxis { d: Rational::one() }),
            Regime::AfterFm => {
                let [l0, l1] = self.after_fm_line_bundles();
                (
                    vec![l0.shift(), l1],
                    ChargeSpec::ToddSpecial {
                        d_alpha: self.d_alpha(),
                    },
                )
            }
        };
        let basis = KernelBasis {
            regime,
            generators,
            charge,
        };
        assert!(
            basis.is_annihilated(self)?,
            "kernel generators for {regime} are not annihilated"
        );
        Ok(basis)
    }

    /// `ch L₀` and `ch L₁` for `L₀ = O(−(D_α+1)f)`, `L₁ = O(Θ − (D_α+2)f)`.
    pub fn after_fm_line_bundles(&self) -> [ChernVector; 2] {
        let da = self.d_alpha();
        [
            self.ch_line_bundle(&DivisorClass::from_ints(0, -(da + 1))),
            self.ch_line_bundle(&DivisorClass::from_ints(1, -(da + 2))),
        ]
    }

    /// Searches line-bundle classes `ch₁ = aΘ + bf` with `|a|, |b| ≤ bound`
    /// for those satisfying the numerical kernel conditions of `Z'₀`:
    /// `x + 3y = −D_α − 1` and `ch₁² = −(2D_α + 6)y`, where
    /// `(x, y) = (Θ·ch₁, f·ch₁)`, together with `0 ≤ y ≤ 1`.
    pub fn classify_kernel_after_fm_bruteforce(&self, bound: u64) -> Result<BruteForceKernel> {
        self.require_k3()?;
        let da = int(self.d_alpha());
        let bound = bound as i64;
        let mut classes = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                let c1 = DivisorClass::from_ints(a, b);
                let x = self.theta_degree(&c1);
                let y = int(a);
                if x + int(3) * &y != -da.clone() - int(1) {
                    continue;
                }
                let c1_sq = self.intersect(&c1, &c1);
                if c1_sq != -(int(2) * &da + int(6)) * &y || !hit_family_feasible(&y) {
                    continue;
                }
                classes.push(self.ch_line_bundle(&c1));
            }
        }
        classes.sort_by(|p, q| p.a.cmp(&q.a));
        let d = self.d_alpha();
        let needed = [1, (d + 1).abs(), (d + 2).abs()].into_iter().max().unwrap_or(1);
        Ok(BruteForceKernel {
            classes,
            truncated: bound < needed,
        })
    }

    /// Linear-algebra kernel of `spec` on the lattice.
    ///
    /// With `generic = true` every continuous parameter is treated as an
    /// independent transcendental, so a class is kept only if its charge
    /// vanishes identically in the parameters. The charges are polynomial of
    /// degree at most 3 in each parameter, so sampling four values per
    /// parameter decides identical vanishing.
    pub fn kernel_sublattice(&self, spec: &ChargeSpec, generic: bool) -> Result<KernelSublattice> {
        let at_point = self.kernel_rows(spec)?;
        let generic_rows = self.generic_kernel_rows(spec)?;
        let rows = if generic { &generic_rows } else { &at_point };
        let basis = null_space(rows).into_iter().map(primitive).collect();
        let exceeds_generic = !generic && rank(&at_point) < rank(&generic_rows);
        Ok(KernelSublattice {
            basis,
            exceeds_generic,
        })
    }

    fn kernel_rows(&self, spec: &ChargeSpec) -> Result<Vec<[Rational; 4]>> {
        let mut re: [Rational; 4] = Default::default();
        let mut im: [Rational; 4] = Default::default();
        for (i, v) in ChernVector::basis().iter().enumerate() {
            let z = self.eval(spec, v)?;
            re[i] = z.re;
            im[i] = z.im;
        }
        Ok(vec![re, im])
    }

    fn generic_kernel_rows(&self, spec: &ChargeSpec) -> Result<Vec<[Rational; 4]>> {
        const SAMPLES: [i64; 4] = [1, 2, 3, 5];
        let n = spec.parameters().len();
        let mut rows = Vec::new();
        let total = SAMPLES.len().pow(n as u32);
        for idx in 0..total {
            let mut k = idx;
            let params: Vec<Rational> = (0..n)
                .map(|_| {
                    let v = SAMPLES[k % SAMPLES.len()];
                    k /= SAMPLES.len();
                    int(v)
                })
                .collect();
            rows.extend(self.kernel_rows(&spec.with_parameters(&params))?);
            if rank(&rows) == 4 {
                break;
            }
        }
        Ok(rows)
    }
}

/// `a² + 2ya + y ≥ 0` for every real `a`, i.e. `0 ≤ y ≤ 1`.
pub fn hit_family_feasible(y: &Rational) -> bool {
    !y.is_negative() && *y <= Rational::one()
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &[[Rational; 4]]) -> (Vec<[Rational; 4]>, Vec<usize>) {
    let mut m: Vec<[Rational; 4]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

fn rank(rows: &[[Rational; 4]]) -> usize {
    rref(rows).1.len()
}

fn null_space(rows: &[[Rational; 4]]) -> Vec<[Rational; 4]> {
    let (m, pivots) = rref(rows);
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [Rational; 4] = Default::default();
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Scales to a primitive integer vector whose first nonzero entry is positive.
fn primitive(v: [Rational; 4]) -> ChernVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let lead_negative = nums.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let scale = if lead_negative { -g } else { g };
    let c: [Rational; 4] = std::array::from_fn(|i| Rational::from_integer(&nums[i] / &scale));
    ChernVector::from_coords(c)
}
