//! Brute-force oracles: exact searches that compute the critical quantities
//! with no formula input, used to validate the closed forms.
//!
//! Two search shapes. Minima over fixed-size subsets (rho, rho-hat) are
//! plain DFS over m-subsets normalized to contain 0, sharing sumset DP
//! state along the prefix and pruning once the partial sumset already
//! reaches the incumbent. Maxima over downward-closed families (deficient
//! sets, sum-free sets, sigma-deficient sets) are branch and bound with
//! incremental feasibility tests.

pub mod witness;

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{well_defined, well_defined_star, CriticalValue, Quantity, Source, ValueKind};
use crate::group::{units, GroupSpec};

pub use witness::{construct_witness, Certificate, Construction, WitnessSet};

/// Above this order the n-by-n translation table is skipped.
const SHIFT_TABLE_LIMIT: usize = 4096;

pub const DEFAULT_RHO_THRESHOLD: usize = 24;
pub const DEFAULT_CHI_THRESHOLD: usize = 30;

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// Hard cap on group order for subset-enumeration searches (rho).
    pub exhaustive_threshold_n: usize,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: 60.0,
            exhaustive_threshold_n: DEFAULT_RHO_THRESHOLD,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> SearchBudget {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
            exhaustive_threshold_n: usize::MAX,
        }
    }

    pub fn with_seconds(mut self, seconds: f64) -> SearchBudget {
        self.max_seconds = seconds;
        self
    }

    pub fn with_threshold(mut self, n: usize) -> SearchBudget {
        self.exhaustive_threshold_n = n;
        self
    }
}

struct Ctx {
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    stop: bool,
}

impl Ctx {
    fn new(budget: &SearchBudget) -> Ctx {
        let deadline = if budget.max_seconds.is_finite() {
            Some(Instant::now() + Duration::from_secs_f64(budget.max_seconds.max(0.0)))
        } else {
            None
        };
        Ctx {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline,
            stop: false,
        }
    }

    /// Counts a node; returns false once the budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.stop = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop = true;
                }
            }
        }
        !self.stop
    }
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn popcnt(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

enum ShiftImpl {
    /// Single-word cyclic group: translation is a masked rotate.
    Rotate { mask: u64 },
    /// Precomputed addition table, row per shift amount.
    Table(Vec<u32>),
    /// Per-bit group addition (large orders only).
    Direct,
}

/// Word-level "or the translate of src into dst" for one group.
struct Shifter {
    group: GroupSpec,
    n: usize,
    w: usize,
    imp: ShiftImpl,
}

impl Shifter {
    fn new(group: GroupSpec) -> Shifter {
        let n = group.order();
        let w = n.div_ceil(64);
        let imp = if group.is_cyclic() && w == 1 {
            ShiftImpl::Rotate {
                mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            }
        } else if n <= SHIFT_TABLE_LIMIT {
            let mut p = vec![0u32; n * n];
            for a in 0..n {
                for x in 0..n {
                    p[a * n + x] = group.add_unchecked(a, x) as u32;
                }
            }
            ShiftImpl::Table(p)
        } else {
            ShiftImpl::Direct
        };
        Shifter { group, n, w, imp }
    }

    /// dst |= (a + src), where src is a bitset over the group.
    fn or_translate(&self, dst: &mut [u64], src: &[u64], a: usize) {
        if a == 0 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d |= s;
            }
            return;
        }
        match &self.imp {
            ShiftImpl::Rotate { mask } => {
                let word = src[0];
                dst[0] |= (word << a | word >> (self.n - a)) & mask;
            }
            ShiftImpl::Table(p) => {
                let row = &p[a * self.n..(a + 1) * self.n];
                for (wi, &wv) in src.iter().enumerate() {
                    let mut bits = wv;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let y = row[wi * 64 + b] as usize;
                        dst[y / 64] |= 1 << (y % 64);
                    }
                }
            }
            ShiftImpl::Direct => {
                for (wi, &wv) in src.iter().enumerate() {
                    let mut bits = wv;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let y = self.group.add_unchecked(a, wi * 64 + b);
                        dst[y / 64] |= 1 << (y % 64);
                    }
                }
            }
        }
    }
}

/// Folds one more element into the layered sumset DP. Row j holds sums of
/// exactly j summands. Descending update = each element used at most once
/// (restricted); ascending = unbounded reuse.
fn dp_add(sh: &Shifter, dp: &mut [u64], h: usize, restricted: bool, x: usize) {
    let w = sh.w;
    if restricted {
        for j in (1..=h).rev() {
            let (lo, hi) = dp.split_at_mut(j * w);
            sh.or_translate(&mut hi[..w], &lo[(j - 1) * w..j * w], x);
        }
    } else {
        for j in 1..=h {
            let (lo, hi) = dp.split_at_mut(j * w);
            sh.or_translate(&mut hi[..w], &lo[(j - 1) * w..j * w], x);
        }
    }
}

fn dp_new(sh: &Shifter, h: usize) -> Vec<u64> {
    let mut dp = vec![0u64; (h + 1) * sh.w];
    dp[0] = 1; // row 0 = {0}, the empty sum
    dp
}

// ---------------------------------------------------------------------------
// Branch and bound over downward-closed set families.

trait BbState: Clone {
    /// Can x join the set without breaking the family property?
    fn feasible(&self, x: usize, scratch: &mut Vec<u64>) -> bool;
    fn add(&mut self, x: usize);
}

struct BbBest {
    len: usize,
    set: Vec<usize>,
}

fn bb_rec<S: BbState>(
    st: &S,
    cands: &[usize],
    chosen: &mut Vec<usize>,
    ctx: &mut Ctx,
    best: &mut BbBest,
    scratch: &mut Vec<u64>,
) {
    if !ctx.tick() {
        return;
    }
    if chosen.len() + cands.len() <= best.len {
        return;
    }
    let x = cands[0];
    let rest = &cands[1..];

    let mut child = st.clone();
    child.add(x);
    chosen.push(x);
    if chosen.len() > best.len {
        best.len = chosen.len();
        best.set = chosen.clone();
    }
    let next: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&y| child.feasible(y, scratch))
        .collect();
    bb_rec(&child, &next, chosen, ctx, best, scratch);
    chosen.pop();

    if ctx.stop {
        return;
    }
    bb_rec(st, rest, chosen, ctx, best, scratch);
}

fn branch_and_bound<S: BbState>(root: &S, all_cands: &[usize], ctx: &mut Ctx) -> BbBest {
    let mut scratch = Vec::new();
    let cands: Vec<usize> = all_cands
        .iter()
        .copied()
        .filter(|&x| root.feasible(x, &mut scratch))
        .collect();
    let mut best = BbBest {
        len: 0,
        set: Vec::new(),
    };
    let mut chosen = Vec::new();
    bb_rec(root, &cands, &mut chosen, ctx, &mut best, &mut scratch);
    best
}

// ---------------------------------------------------------------------------
// Deficient sets: A with g not in hA (or h^A).

#[derive(Clone)]
struct DeficientState<'a> {
    sh: &'a Shifter,
    h: usize,
    restricted: bool,
    g: usize,
    dp: Vec<u64>,
}

impl<'a> DeficientState<'a> {
    fn new(sh: &'a Shifter, h: usize, restricted: bool, g: usize) -> Self {
        DeficientState {
            sh,
            h,
            restricted,
            g,
            dp: dp_new(sh, h),
        }
    }

    fn row(&self, j: usize) -> &[u64] {
        &self.dp[j * self.sh.w..(j + 1) * self.sh.w]
    }
}

impl BbState for DeficientState<'_> {
    fn feasible(&self, x: usize, _scratch: &mut Vec<u64>) -> bool {
        let grp = &self.sh.group;
        if self.restricted {
            // g stays outside h^(A u {x}) iff g - x is not already a sum
            // of h-1 distinct elements
            let t = grp.add_unchecked(self.g, grp.neg_unchecked(x));
            !bit(self.row(self.h - 1), t)
        } else {
            // x may be reused: check g - k*x against row h-k for every k
            let mut kx = 0;
            for k in 1..=self.h {
                kx = grp.add_unchecked(kx, x);
                let t = grp.add_unchecked(self.g, grp.neg_unchecked(kx));
                if bit(self.row(self.h - k), t) {
                    return false;
                }
            }
            true
        }
    }

    fn add(&mut self, x: usize) {
        dp_add(self.sh, &mut self.dp, self.h, self.restricted, x);
    }
}

#[derive(Clone, Debug)]
pub struct DeficientSearch {
    pub size: usize,
    pub witness: WitnessSet,
    pub nodes: u64,
    pub exhaustive: bool,
}

/// Largest A (subset of G, or of G \ {0} when `exclude_zero`) whose h-fold
/// sumset misses g. Budget exhaustion degrades the result to a lower bound,
/// flagged by `exhaustive: false`.
fn max_deficient_impl(
    group: &GroupSpec,
    h: usize,
    restricted: bool,
    g: usize,
    exclude_zero: bool,
    budget: &SearchBudget,
) -> Result<DeficientSearch> {
    let n = group.order();
    if h < 1 {
        return Err(Error::invalid("max_deficient: h must be >= 1"));
    }
    if g >= n {
        return Err(Error::invalid(format!(
            "max_deficient: target {g} out of range for order {n}"
        )));
    }
    let sh = Shifter::new(group.clone());
    let root = DeficientState::new(&sh, h, restricted, g);
    let cands: Vec<usize> = (if exclude_zero { 1 } else { 0 }..n).collect();
    let mut ctx = Ctx::new(budget);
    let best = branch_and_bound(&root, &cands, &mut ctx);
    let witness = WitnessSet {
        group: group.clone(),
        elements: best.set,
        certifies: if restricted {
            Certificate::RestrictedDeficient
        } else {
            Certificate::SumsetDeficient
        },
        h,
        g: Some(g),
        claimed_size: None,
        exact: !ctx.stop,
    };
    if !witness.elements.is_empty() {
        witness.validate()?;
    }
    Ok(DeficientSearch {
        size: best.len,
        witness,
        nodes: ctx.nodes,
        exhaustive: !ctx.stop,
    })
}

pub fn max_deficient(
    group: &GroupSpec,
    h: usize,
    restricted: bool,
    g: usize,
    budget: &SearchBudget,
) -> Result<DeficientSearch> {
    max_deficient_impl(group, h, restricted, g, false, budget)
}

/// Orbit representatives of G under the symmetries that preserve
/// "some deficient set of a given size misses this target": translation by
/// hG (only when the set family is translation-closed), automorphic
/// dilation by units of the exponent, and negation.
fn target_orbit_reps(group: &GroupSpec, h: usize, allow_translation: bool) -> Vec<usize> {
    let n = group.order();
    let mut shifts = Vec::new();
    if allow_translation {
        let mut in_hg = vec![false; n];
        for x in 0..n {
            in_hg[group.scale_unchecked(h, x)] = true;
        }
        shifts = (0..n).filter(|&s| in_hg[s]).collect();
    }
    let dils = units(group.exponent()).unwrap_or_default();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        reps.push(s);
        let mut queue = vec![s];
        seen[s] = true;
        while let Some(g) = queue.pop() {
            let push = |y: usize, seen: &mut Vec<bool>, queue: &mut Vec<usize>| {
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            };
            for &t in &shifts {
                push(group.add_unchecked(g, t), &mut seen, &mut queue);
            }
            push(group.neg_unchecked(g), &mut seen, &mut queue);
            for &u in &dils {
                let mut ug = 0;
                // u < exponent <= n keeps this loop acceptable at oracle sizes
                for _ in 0..u {
                    ug = group.add_unchecked(ug, g);
                }
                push(ug, &mut seen, &mut queue);
            }
        }
    }
    reps
}

#[derive(Clone, Debug)]
pub struct CriticalSearch {
    pub value: CriticalValue,
    pub witness: WitnessSet,
    pub nodes: u64,
    pub exhaustive: bool,
}

fn chi_search(
    group: &GroupSpec,
    h: usize,
    restricted: bool,
    star: bool,
    budget: &SearchBudget,
) -> Result<CriticalSearch> {
    if h < 1 {
        return Err(Error::invalid("chi search: h must be >= 1"));
    }
    if restricted {
        let wd = if star {
            well_defined_star(group, h)
        } else {
            well_defined(group, h)
        };
        if !wd.defined {
            return Err(Error::invalid(format!(
                "restricted critical number undefined for {group}, h={h} ({:?})",
                wd.reason
            )));
        }
    }
    let targets = target_orbit_reps(group, h, !star);
    let results: Vec<DeficientSearch> = targets
        .par_iter()
        .map(|&g| max_deficient_impl(group, h, restricted, g, star, budget))
        .collect::<Result<_>>()?;
    let nodes: u64 = results.iter().map(|r| r.nodes).sum();
    let exhaustive = results.iter().all(|r| r.exhaustive);
    let best = results
        .into_iter()
        .max_by_key(|r| r.size)
        .ok_or_else(|| Error::invalid("chi search: group has no targets"))?;
    let quantity = match (restricted, star) {
        (true, false) => Quantity::ChiHat,
        (true, true) => Quantity::ChiHatStar,
        (false, _) => Quantity::Chi,
    };
    let tag = match (star, exhaustive) {
        (false, true) => "exhaustive_search",
        (false, false) => "budgeted_search",
        (true, true) => "star_exhaustive_search",
        (true, false) => "star_budgeted_search",
    };
    let value = CriticalValue {
        quantity,
        kind: if exhaustive {
            ValueKind::Exact
        } else {
            ValueKind::LowerBound
        },
        value: Some(best.size + 1),
        source: Source::Oracle,
        case_tag: tag.to_string(),
    };
    Ok(CriticalSearch {
        value,
        witness: best.witness,
        nodes,
        exhaustive,
    })
}

/// chi(G, h) by exhaustive search: 1 + max size of a deficient set.
pub fn chi_exact(group: &GroupSpec, h: usize, budget: &SearchBudget) -> Result<CriticalSearch> {
    chi_search(group, h, false, false, budget)
}

/// chi restricted to candidate sets inside G \ {0}.
pub fn chi_exact_star(
    group: &GroupSpec,
    h: usize,
    budget: &SearchBudget,
) -> Result<CriticalSearch> {
    chi_search(group, h, false, true, budget)
}

/// chi-hat(G, h); errors when the restricted critical number does not exist.
pub fn chi_hat_exact(group: &GroupSpec, h: usize, budget: &SearchBudget) -> Result<CriticalSearch> {
    chi_search(group, h, true, false, budget)
}

pub fn chi_hat_exact_star(
    group: &GroupSpec,
    h: usize,
    budget: &SearchBudget,
) -> Result<CriticalSearch> {
    chi_search(group, h, true, true, budget)
}

// ---------------------------------------------------------------------------
// Minimum sumset size over m-subsets (rho, rho-hat).

#[derive(Clone, Debug)]
pub struct RhoSearch {
    pub value: usize,
    pub witness: WitnessSet,
    pub nodes: u64,
}

struct RhoRun<'a> {
    sh: &'a Shifter,
    h: usize,
    restricted: bool,
    n: usize,
    best: usize,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
    ctx: Ctx,
}

impl RhoRun<'_> {
    fn hrow<'d>(&self, dp: &'d [u64]) -> &'d [u64] {
        &dp[self.h * self.sh.w..(self.h + 1) * self.sh.w]
    }

    fn rec(&mut self, dp: &[u64], start: usize, remaining: usize) -> Result<()> {
        if remaining == 0 {
            let size = popcnt(self.hrow(dp));
            if size < self.best {
                self.best = size;
                self.best_set = self.chosen.clone();
            }
            return Ok(());
        }
        for x in start..=(self.n - remaining) {
            if !self.ctx.tick() {
                return Err(Error::BudgetExceeded(format!(
                    "rho search stopped after {} nodes",
                    self.ctx.nodes
                )));
            }
            let mut child = dp.to_vec();
            dp_add(self.sh, &mut child, self.h, self.restricted, x);
            // sumsets only grow along a prefix, so an incumbent-sized
            // partial sumset can never improve
            if popcnt(self.hrow(&child)) < self.best {
                self.chosen.push(x);
                self.rec(&child, x + 1, remaining - 1)?;
                self.chosen.pop();
            }
        }
        Ok(())
    }
}

fn rho_search(
    group: &GroupSpec,
    m: usize,
    h: usize,
    restricted: bool,
    budget: &SearchBudget,
) -> Result<RhoSearch> {
    let n = group.order();
    if m < 1 || m > n {
        return Err(Error::invalid(format!(
            "rho search: need 1 <= m <= {n}, got m={m}"
        )));
    }
    if restricted {
        if h > m {
            return Err(Error::invalid(format!(
                "rho-hat: need h <= m, got h={h} m={m}"
            )));
        }
    } else if h < 1 {
        return Err(Error::invalid("rho: h must be >= 1"));
    }
    if n > budget.exhaustive_threshold_n {
        return Err(Error::BudgetExceeded(format!(
            "rho search requires n <= {} (got {n})",
            budget.exhaustive_threshold_n
        )));
    }
    let sh = Shifter::new(group.clone());
    // translation-normalize: every m-subset is a translate of one containing 0
    let mut dp = dp_new(&sh, h);
    dp_add(&sh, &mut dp, h, restricted, 0);
    let mut run = RhoRun {
        sh: &sh,
        h,
        restricted,
        n,
        best: usize::MAX,
        best_set: Vec::new(),
        chosen: vec![0],
        ctx: Ctx::new(budget),
    };
    run.rec(&dp, 1, m - 1)?;
    let witness = WitnessSet {
        group: group.clone(),
        elements: run.best_set,
        certifies: if restricted {
            Certificate::RestrictedDeficient
        } else {
            Certificate::SumsetDeficient
        },
        h,
        g: None,
        claimed_size: Some(run.best),
        exact: true,
    };
    witness.validate()?;
    Ok(RhoSearch {
        value: run.best,
        witness,
        nodes: run.ctx.nodes,
    })
}

/// rho(G, m, h) = min |hA| over m-subsets A, by exhaustive enumeration.
pub fn rho_exact(group: &GroupSpec, m: usize, h: usize, budget: &SearchBudget) -> Result<RhoSearch> {
    rho_search(group, m, h, false, budget)
}

/// rho-hat(G, m, h) = min |h^A| over m-subsets A.
pub fn rho_hat_exact(
    group: &GroupSpec,
    m: usize,
    h: usize,
    budget: &SearchBudget,
) -> Result<RhoSearch> {
    rho_search(group, m, h, true, budget)
}

// ---------------------------------------------------------------------------
// Subset-sum critical number and the two sum-free maxima.

#[derive(Clone)]
struct SigmaState<'a> {
    sh: &'a Shifter,
    sums: Vec<u64>,
}

impl BbState for SigmaState<'_> {
    fn feasible(&self, x: usize, scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.extend_from_slice(&self.sums);
        self.sh.or_translate(scratch, &self.sums, x);
        popcnt(scratch) < self.sh.n
    }

    fn add(&mut self, x: usize) {
        let snap = self.sums.clone();
        self.sh.or_translate(&mut self.sums, &snap, x);
    }
}

/// Smallest m such that every m-subset of G \ {0} has subset sums covering
/// all of G: 1 + the largest sigma-deficient subset.
pub fn sigma_critical_exact(group: &GroupSpec, budget: &SearchBudget) -> Result<CriticalSearch> {
    let n = group.order();
    if n < 2 {
        return Err(Error::invalid("sigma critical: group order must be >= 2"));
    }
    let sh = Shifter::new(group.clone());
    let mut sums = vec![0u64; sh.w];
    sums[0] = 1; // the empty sum
    let root = SigmaState { sh: &sh, sums };
    let cands: Vec<usize> = (1..n).collect();
    let mut ctx = Ctx::new(budget);
    let best = branch_and_bound(&root, &cands, &mut ctx);
    let exhaustive = !ctx.stop;
    let witness = WitnessSet {
        group: group.clone(),
        elements: best.set,
        certifies: Certificate::SigmaDeficient,
        h: 0,
        g: None,
        claimed_size: None,
        exact: exhaustive,
    };
    if !witness.elements.is_empty() {
        witness.validate()?;
    }
    let value = CriticalValue {
        quantity: Quantity::ClassicalCritical,
        kind: if exhaustive {
            ValueKind::Exact
        } else {
            ValueKind::LowerBound
        },
        value: Some(best.len + 1),
        source: Source::Oracle,
        case_tag: if exhaustive {
            "exhaustive_search".to_string()
        } else {
            "budgeted_search".to_string()
        },
    };
    Ok(CriticalSearch {
        value,
        witness,
        nodes: ctx.nodes,
        exhaustive,
    })
}

#[derive(Clone)]
struct SumFreeState<'a> {
    sh: &'a Shifter,
    a: Vec<u64>,
    two_a: Vec<u64>,
}

impl BbState for SumFreeState<'_> {
    fn feasible(&self, x: usize, scratch: &mut Vec<u64>) -> bool {
        let w = self.sh.w;
        scratch.clear();
        scratch.extend_from_slice(&self.a);
        scratch.extend_from_slice(&self.two_a);
        let (a1, t1) = scratch.split_at_mut(w);
        a1[x / 64] |= 1 << (x % 64);
        self.sh.or_translate(t1, a1, x);
        a1.iter().zip(t1.iter()).all(|(p, q)| p & *q == 0)
    }

    fn add(&mut self, x: usize) {
        self.a[x / 64] |= 1 << (x % 64);
        let snap = self.a.clone();
        self.sh.or_translate(&mut self.two_a, &snap, x);
    }
}

#[derive(Clone)]
struct ThreeOneState<'a> {
    sh: &'a Shifter,
    r1: Vec<u64>,
    r2: Vec<u64>,
    r3: Vec<u64>,
}

impl BbState for ThreeOneState<'_> {
    fn feasible(&self, x: usize, scratch: &mut Vec<u64>) -> bool {
        let w = self.sh.w;
        scratch.clear();
        scratch.extend_from_slice(&self.r1);
        scratch.extend_from_slice(&self.r2);
        scratch.extend_from_slice(&self.r3);
        let (s1, rest) = scratch.split_at_mut(w);
        let (s2, s3) = rest.split_at_mut(w);
        s1[x / 64] |= 1 << (x % 64);
        self.sh.or_translate(s2, s1, x);
        self.sh.or_translate(s3, s2, x);
        s1.iter().zip(s3.iter()).all(|(p, q)| p & *q == 0)
    }

    fn add(&mut self, x: usize) {
        self.r1[x / 64] |= 1 << (x % 64);
        let snap = self.r1.clone();
        self.sh.or_translate(&mut self.r2, &snap, x);
        let snap = self.r2.clone();
        self.sh.or_translate(&mut self.r3, &snap, x);
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalSearch {
    pub size: usize,
    pub witness: WitnessSet,
    pub nodes: u64,
    pub exhaustive: bool,
}

fn extremal_result(
    group: &GroupSpec,
    best: BbBest,
    certifies: Certificate,
    h: usize,
    ctx: Ctx,
) -> Result<ExtremalSearch> {
    let exhaustive = !ctx.stop;
    let witness = WitnessSet {
        group: group.clone(),
        elements: best.set,
        certifies,
        h,
        g: None,
        claimed_size: None,
        exact: exhaustive,
    };
    if !witness.elements.is_empty() {
        witness.validate()?;
    }
    Ok(ExtremalSearch {
        size: best.len,
        witness,
        nodes: ctx.nodes,
        exhaustive,
    })
}

/// Largest A with A and A+A disjoint.
pub fn max_sum_free(group: &GroupSpec, budget: &SearchBudget) -> Result<ExtremalSearch> {
    let sh = Shifter::new(group.clone());
    let root = SumFreeState {
        sh: &sh,
        a: vec![0; sh.w],
        two_a: vec![0; sh.w],
    };
    let cands: Vec<usize> = (0..sh.n).collect();
    let mut ctx = Ctx::new(budget);
    let best = branch_and_bound(&root, &cands, &mut ctx);
    extremal_result(group, best, Certificate::SumFree, 2, ctx)
}

/// Largest A with A and A+A+A disjoint.
pub fn max_three_one_sum_free(group: &GroupSpec, budget: &SearchBudget) -> Result<ExtremalSearch> {
    let sh = Shifter::new(group.clone());
    let root = ThreeOneState {
        sh: &sh,
        r1: vec![0; sh.w],
        r2: vec![0; sh.w],
        r3: vec![0; sh.w],
    };
    let cands: Vec<usize> = (0..sh.n).collect();
    let mut ctx = Ctx::new(budget);
    let best = branch_and_bound(&root, &cands, &mut ctx);
    extremal_result(group, best, Certificate::ThreeOneSumFree, 3, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{u_func, v_g_naive};
    use crate::group::make_group;
    use crate::gset::GSet;
    use crate::sumset::{h_fold, h_fold_restricted};

    fn budget() -> SearchBudget {
        SearchBudget::unlimited()
    }

    #[test]
    fn max_deficient_evens() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        let r = max_deficient(&z10, 2, false, 1, &budget()).unwrap();
        assert_eq!(r.size, 5);
        assert!(r.exhaustive);
        r.witness.validate().unwrap();
    }

    #[test]
    fn chi_matches_v1_plus_1() {
        for (factors, h, want) in [
            (vec![10usize], 2usize, 6usize),
            (vec![12], 3, 7),
            (vec![2, 6], 3, 7),
            (vec![9], 2, 5),
            (vec![15], 4, 6),
        ] {
            let g = make_group(&factors).unwrap();
            let r = chi_exact(&g, h, &budget()).unwrap();
            assert_eq!(r.value.value, Some(want), "{g} h={h}");
            assert_eq!(
                want,
                v_g_naive(g.order(), h, 1).unwrap() + 1,
                "frozen value out of sync: {g} h={h}"
            );
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn rho_matches_u_on_small_groups() {
        for (factors, m, h) in [
            (vec![10usize], 4usize, 2usize),
            (vec![12], 5, 3),
            (vec![2, 6], 7, 2),
            (vec![9], 4, 4),
        ] {
            let g = make_group(&factors).unwrap();
            let r = rho_exact(&g, m, h, &budget()).unwrap();
            assert_eq!(r.value, u_func(g.order(), m, h).unwrap(), "{g} m={m} h={h}");
            r.witness.validate().unwrap();
        }
    }

    #[test]
    fn rho_hat_prime_formula() {
        let z7 = GroupSpec::cyclic(7).unwrap();
        for m in 1..=7usize {
            for h in 0..=m {
                let r = rho_hat_exact(&z7, m, h, &budget()).unwrap();
                let expect = if h == 0 || h == m {
                    1
                } else {
                    (h * m - h * h + 1).min(7)
                };
                assert_eq!(r.value, expect, "m={m} h={h}");
            }
        }
    }

    /// Double-check rho-hat against a from-scratch enumeration that shares
    /// no code with the search (GSet + engine only).
    #[test]
    fn rho_hat_agrees_with_flat_enumeration() {
        for factors in [vec![8usize], vec![2, 4], vec![9]] {
            let g = make_group(&factors).unwrap();
            let n = g.order();
            for m in 1..=n {
                for h in 0..=m.min(3) {
                    let mut naive = usize::MAX;
                    for mask in 0u32..(1 << n) {
                        if mask.count_ones() as usize != m {
                            continue;
                        }
                        let elems: Vec<usize> =
                            (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                        let a = GSet::from_elements(g.clone(), &elems).unwrap();
                        naive = naive.min(h_fold_restricted(&a, h).unwrap().len());
                    }
                    let r = rho_hat_exact(&g, m, h, &budget()).unwrap();
                    assert_eq!(r.value, naive, "{g} m={m} h={h}");
                }
            }
        }
    }

    #[test]
    fn chi_hat_small_values() {
        let z9 = GroupSpec::cyclic(9).unwrap();
        let r = chi_hat_exact(&z9, 2, &budget()).unwrap();
        assert_eq!(r.value.value, Some(6));

        let z13 = GroupSpec::cyclic(13).unwrap();
        let r = chi_hat_exact(&z13, 3, &budget()).unwrap();
        assert_eq!(r.value.value, Some(7));

        let e8 = make_group(&[2, 2, 2]).unwrap();
        assert!(chi_hat_exact(&e8, 2, &budget()).is_err());
    }

    #[test]
    fn star_variants_agree_on_small_groups() {
        for factors in [vec![7usize], vec![10], vec![2, 4]] {
            let g = make_group(&factors).unwrap();
            let n = g.order();
            for h in 2..=(n - 2).min(4) {
                let plain = chi_exact(&g, h, &budget()).unwrap();
                let star = chi_exact_star(&g, h, &budget()).unwrap();
                assert_eq!(plain.value.value, star.value.value, "{g} h={h}");
            }
        }
    }

    #[test]
    fn sigma_critical_small_values() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        assert_eq!(
            sigma_critical_exact(&z10, &budget()).unwrap().value.value,
            Some(5)
        );
        let z15 = GroupSpec::cyclic(15).unwrap();
        assert_eq!(
            sigma_critical_exact(&z15, &budget()).unwrap().value.value,
            Some(7)
        );
        let g = make_group(&[2, 6]).unwrap();
        assert_eq!(
            sigma_critical_exact(&g, &budget()).unwrap().value.value,
            Some(6)
        );
    }

    #[test]
    fn sum_free_maxima() {
        for (n, want) in [(10usize, 5usize), (11, 4), (12, 6), (13, 4), (14, 7)] {
            let g = GroupSpec::cyclic(n).unwrap();
            let r = max_sum_free(&g, &budget()).unwrap();
            assert_eq!(r.size, want, "n={n}");
            assert_eq!(
                want,
                v_g_naive(n, 3, 1).unwrap(),
                "frozen value out of sync: n={n}"
            );
            let a = r.witness.set().unwrap();
            assert!(!a.intersects(&h_fold(&a, 2).unwrap()));
        }
    }

    #[test]
    fn three_one_sum_free_maxima() {
        for n in 4..=16usize {
            let g = GroupSpec::cyclic(n).unwrap();
            let r = max_three_one_sum_free(&g, &budget()).unwrap();
            assert_eq!(r.size, v_g_naive(n, 4, 2).unwrap(), "n={n}");
        }
    }

    #[test]
    fn budget_exhaustion_is_signalled() {
        let z20 = GroupSpec::cyclic(20).unwrap();
        let tiny = SearchBudget {
            max_nodes: 10,
            max_seconds: f64::INFINITY,
            exhaustive_threshold_n: 24,
        };
        assert!(matches!(
            rho_exact(&z20, 10, 3, &tiny),
            Err(Error::BudgetExceeded(_))
        ));
        let r = chi_exact(&z20, 3, &tiny).unwrap();
        assert_eq!(r.value.kind, ValueKind::LowerBound);
        assert!(!r.exhaustive);

        let over = SearchBudget::unlimited().with_threshold(16);
        assert!(matches!(
            rho_exact(&z20, 5, 2, &over),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn target_orbits_collapse() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        assert_eq!(target_orbit_reps(&z10, 2, true), vec![0, 1]);
        let z7 = GroupSpec::cyclic(7).unwrap();
        // 7Z_7 = {0}? no: h=3, 3Z_7 = Z_7, so one orbit
        assert_eq!(target_orbit_reps(&z7, 3, true), vec![0]);
    }
}
