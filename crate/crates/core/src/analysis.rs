//! Instance checkers for constant-rank subspaces of square matrices.
//!
//! For a subspace `M` of `n × n` matrices and a nonzero vector `u`, the
//! evaluation map `T_u(B) = Bu` has kernel `K_u = {A ∈ M : Au = 0}` of
//! dimension `r(u)`. The checkers below test, on concrete instances:
//!
//! * that `Bu` lies in the image of `A` whenever `A` has maximal rank in `M`
//!   and `Au = 0` ([`check_image_of_kernel`]);
//! * the slice bound `r(u) ≥ n + 1 − r` when `dim M = n + 1` and `q ≥ r + 1`
//!   ([`check_lemma2_bound`]);
//! * the double count of `{(A, u) : A ≠ 0, u ≠ 0, Au = 0}` by matrices and by
//!   vectors, and the q-adic valuation argument it feeds ([`counting_report`]);
//! * the general bound `dim M ≤ m + n − r` ([`check_general_bound`]).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{self, member_of_span, MatGF};
use crate::subspace::{SubspaceBasis, DEFAULT_ENUMERATION_BUDGET};

/// `K_u` together with the dimensions of the evaluation map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSlice {
    pub u: MatGF,
    pub slice_basis: Vec<MatGF>,
    pub r_u: usize,
    pub image_dim: usize,
}

/// One failure of `Bu ∈ im A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub a: MatGF,
    pub u: MatGF,
    pub b: MatGF,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageOfKernelReport {
    pub holds: bool,
    pub max_rank: usize,
    pub elements_checked: u64,
    pub violation_count: u64,
    /// The first [`MAX_RECORDED_VIOLATIONS`] violations in scan order.
    pub violations: Vec<Violation>,
}

pub const MAX_RECORDED_VIOLATIONS: usize = 16;

/// How many maximal-rank elements [`check_image_of_kernel`] visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    /// `None` scans every maximal-rank element; `Some(k)` draws `k` at random.
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Report {
    pub rank: usize,
    pub dim: usize,
    pub n: usize,
    pub q: u32,
    /// `dim = n + 1` and `q ≥ r + 1`.
    pub applicable: bool,
    pub min_r_u: usize,
    /// `n + 1 − r`.
    pub bound: usize,
    pub bound_met: bool,
    /// `bound_met` when applicable, vacuously true otherwise.
    pub holds: bool,
    pub points_scanned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub q: u32,
    pub n: usize,
    pub r: usize,
    pub d: usize,
    pub omega_by_elements: BigUint,
    pub omega_by_vectors: BigUint,
    /// Valuation of `q^(2n+1−r) − q^(n−r) − q^(n+1) + q^n`, when `d = n + 1`.
    pub lhs_valuation: Option<u32>,
    pub rhs_min_exponent: usize,
    pub contradiction: bool,
}

impl CountingReport {
    pub fn identity_holds(&self) -> bool {
        self.omega_by_elements == self.omega_by_vectors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralBoundReport {
    pub rank: usize,
    pub dim: usize,
    pub m: usize,
    pub n: usize,
    pub q: u32,
    /// `d ≤ m + n − r`.
    pub within_general_bound: bool,
    /// `d ≤ n`.
    pub within_n: bool,
    /// `q ≥ r + 1`.
    pub field_hypothesis: bool,
}

fn require_square(space: &SubspaceBasis) -> Result<()> {
    if space.is_square() {
        Ok(())
    } else {
        Err(Error::ShapeViolation(format!(
            "{}x{} subspace; pad to square first",
            space.rows(),
            space.cols()
        )))
    }
}

/// Flattened basis for repeated evaluation `B_i u`.
struct Evaluator<'a> {
    field: &'a Field,
    n: usize,
    d: usize,
    flat: Vec<Elem>,
}

impl<'a> Evaluator<'a> {
    fn new(space: &'a SubspaceBasis) -> Self {
        Evaluator {
            field: space.field(),
            n: space.cols(),
            d: space.dim(),
            flat: space.basis().iter().flat_map(|b| b.entries().iter().copied()).collect(),
        }
    }

    /// Rows of the `d × n` matrix whose row `i` is `B_i u`; its rank is
    /// `dim T_u(M)`.
    fn images(&self, u: &[Elem], out: &mut Vec<Elem>) {
        let (f, n) = (self.field, self.n);
        out.clear();
        for b in self.flat.chunks_exact(n * n) {
            for row in b.chunks_exact(n) {
                let dot = row
                    .iter()
                    .zip(u)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                out.push(dot);
            }
        }
    }

    fn image_dim(&self, u: &[Elem], scratch: &mut Vec<Elem>) -> usize {
        self.images(u, scratch);
        matrix::rank_of(self.field, scratch, self.d, self.n)
    }
}

/// Monic vectors of length `n` in increasing lexicographic order: one
/// representative (first nonzero entry 1) per projective point.
pub fn projective_points(field: &Field, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let last = (field.q() - 1) as Elem;
    (0..n).rev().flat_map(move |lead| {
        let mut v = vec![0 as Elem; n];
        v[lead] = 1;
        let mut first = true;
        std::iter::from_fn(move || {
            if first {
                first = false;
                return Some(v.clone());
            }
            for j in (lead + 1..n).rev() {
                if v[j] == last {
                    v[j] = 0;
                } else {
                    v[j] += 1;
                    return Some(v.clone());
                }
            }
            None
        })
    })
}

/// `K_u`, its dimension `r(u)` and `dim T_u(M)`.
pub fn kernel_slice(space: &SubspaceBasis, u: &MatGF) -> Result<KernelSlice> {
    require_square(space)?;
    if u.field() != space.field() {
        return Err(Error::FieldMismatch);
    }
    if u.shape() != (space.cols(), 1) {
        return Err(Error::DimensionMismatch(format!(
            "vector of shape {}x{} for {}x{} matrices",
            u.rows(),
            u.cols(),
            space.rows(),
            space.cols()
        )));
    }
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    let field = space.field();
    let (n, d) = (space.cols(), space.dim());
    // columns B_i u of the evaluation matrix, as an n × d matrix
    let mut eval = MatGF::zeros(field, n, d);
    for (i, b) in space.basis().iter().enumerate() {
        let bu = b.mul(u)?;
        for k in 0..n {
            eval.set(k, i, bu.get(k, 0));
        }
    }
    let image_dim = eval.rank();
    let slice_basis: Vec<MatGF> = eval
        .kernel_basis()
        .iter()
        .map(|c| space.combine(c.entries()))
        .collect();
    Ok(KernelSlice {
        u: u.clone(),
        r_u: slice_basis.len(),
        slice_basis,
        image_dim,
    })
}

/// Tests `Bu ∈ im A` for maximal-rank `A` in the span, `u` in a kernel basis
/// of `A` and `B` in the basis of the subspace. By linearity this covers all
/// `u ∈ ker A` and all `B` in the span.
pub fn check_image_of_kernel(space: &SubspaceBasis, options: ScanOptions) -> Result<ImageOfKernelReport> {
    require_square(space)?;
    let max_rank = space.rank_profile()?.max_rank();
    let mut report = ImageOfKernelReport {
        holds: true,
        max_rank,
        elements_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    let mut visit = |a: &MatGF| -> Result<()> {
        report.elements_checked += 1;
        let image = a.image_basis();
        for u in a.kernel_basis() {
            for b in space.basis() {
                let bu = b.mul(&u)?;
                if !member_of_span(&bu, &image)? {
                    report.violation_count += 1;
                    if report.violations.len() < MAX_RECORDED_VIOLATIONS {
                        report.violations.push(Violation {
                            a: a.clone(),
                            u: u.clone(),
                            b: b.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    };

    match options.sample {
        None => {
            let mut failure = None;
            space.for_each_element(DEFAULT_ENUMERATION_BUDGET, |_, a| {
                if a.is_zero() || a.rank() != max_rank {
                    return true;
                }
                match visit(a) {
                    Ok(()) => true,
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let q = space.field().q();
            let mut drawn = 0;
            // give up after many misses; max-rank elements are never rare in practice
            let mut attempts = 0usize;
            while drawn < count && attempts < count.saturating_mul(1000).max(1000) {
                attempts += 1;
                let coeffs: Vec<Elem> = (0..space.dim()).map(|_| rng.gen_range(0..q) as Elem).collect();
                let a = space.combine(&coeffs);
                if a.is_zero() || a.rank() != max_rank {
                    continue;
                }
                visit(&a)?;
                drawn += 1;
            }
        }
    }
    report.holds = report.violation_count == 0;
    Ok(report)
}

/// Scans one vector per projective point and returns `(min r(u), points, Σ_u (q^{r(u)} − 1))`
/// with the sum taken over all nonzero `u`.
fn scan_slices(space: &SubspaceBasis) -> (usize, u64, BigUint) {
    let field = space.field();
    let eval = Evaluator::new(space);
    let q = BigUint::from(field.q());
    let scalars = BigUint::from(field.q() - 1);
    let mut scratch = Vec::new();
    let mut min_r_u = usize::MAX;
    let mut points = 0u64;
    let mut omega = BigUint::zero();
    for u in projective_points(field, space.cols()) {
        let r_u = eval.d - eval.image_dim(&u, &mut scratch);
        min_r_u = min_r_u.min(r_u);
        points += 1;
        omega += &scalars * (q.pow(r_u as u32) - BigUint::one());
    }
    (min_r_u, points, omega)
}

/// Reports `min r(u)` and, when `dim M = n + 1` and `q ≥ r + 1`, whether
/// `r(u) ≥ n + 1 − r` for every nonzero `u`.
pub fn check_lemma2_bound(space: &SubspaceBasis) -> Result<Lemma2Report> {
    require_square(space)?;
    let rank = space.constant_rank()?;
    let n = space.cols();
    let d = space.dim();
    let q = space.field().q();
    let (min_r_u, points_scanned, _) = scan_slices(space);
    let applicable = d == n + 1 && q as usize > rank;
    let bound = n + 1 - rank;
    let bound_met = min_r_u >= bound;
    Ok(Lemma2Report {
        rank,
        dim: d,
        n,
        q,
        applicable,
        min_r_u,
        bound,
        bound_met,
        holds: !applicable || bound_met,
        points_scanned,
    })
}

/// `q^(2n+1−r) − q^(n−r) − q^(n+1) + q^n`, for `1 ≤ r ≤ n`.
pub fn rearranged_lhs(q: u32, n: u32, r: u32) -> BigUint {
    assert!(1 <= r && r <= n, "need 1 <= r <= n");
    let q = BigUint::from(q);
    (q.pow(2 * n + 1 - r) + q.pow(n)) - (q.pow(n - r) + q.pow(n + 1))
}

/// Largest `k` with `q^k | x`; `None` for `x = 0`.
pub fn q_adic_valuation(x: &BigUint, q: u32) -> Option<u32> {
    assert!(q >= 2);
    if x.is_zero() {
        return None;
    }
    let q = BigUint::from(q);
    let mut rest = x.clone();
    let mut k = 0;
    while (&rest % &q).is_zero() {
        rest /= &q;
        k += 1;
    }
    Some(k)
}

/// Counts `Ω = {(A, u) : A ∈ M∖0, u ≠ 0, Au = 0}` once by matrices (from the
/// rank census) and once by vectors (`Σ_u (q^{r(u)} − 1)`).
pub fn counting_report(space: &SubspaceBasis) -> Result<CountingReport> {
    require_square(space)?;
    let profile = space.rank_profile()?;
    let r = profile.constant_rank().ok_or(Error::NotConstantRank)?;
    let field = space.field();
    let q = field.q();
    let n = space.cols();
    let d = space.dim();

    let qb = BigUint::from(q);
    let omega_by_elements = profile
        .counts
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (s, &count)| {
            acc + BigUint::from(count) * (qb.pow((n - s) as u32) - BigUint::one())
        });
    let (min_r_u, _, omega_by_vectors) = scan_slices(space);
    let lhs_valuation = (d == n + 1)
        .then(|| q_adic_valuation(&rearranged_lhs(q, n as u32, r as u32), q))
        .flatten();
    Ok(CountingReport {
        q,
        n,
        r,
        d,
        omega_by_elements,
        omega_by_vectors,
        lhs_valuation,
        rhs_min_exponent: min_r_u,
        contradiction: d == n + 1 && min_r_u >= n + 1 - r,
    })
}

/// `d ≤ m + n − r`, plus whether `d ≤ n` and whether `q ≥ r + 1`.
pub fn check_general_bound(space: &SubspaceBasis) -> Result<GeneralBoundReport> {
    let rank = space.constant_rank()?;
    let (m, n, d, q) = (space.rows(), space.cols(), space.dim(), space.field().q());
    Ok(GeneralBoundReport {
        rank,
        dim: d,
        m,
        n,
        q,
        within_general_bound: d + rank <= m + n,
        within_n: d <= n,
        field_hypothesis: q as usize > rank,
    })
}
