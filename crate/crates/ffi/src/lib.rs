//! C ABI over `beliefrev`.
//!
//! Every fallible function returns a [`BrStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`br_last_error`]. Handles are opaque; each `*_new`/`*_parse`
//! has a matching `*_free`, and strings returned by the library are released
//! with [`br_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use beliefrev::nars::{self, Calculus, Horizon};
use beliefrev::scenario::{self, RunOptions};
use beliefrev::{
    jeffrey_update, parse_sentence, virtual_update, BeliefState, Distribution, Error, EvidenceCount, Judgment,
    Sentence, SoftEvidence, Space, Term, TruthValue,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Sentence, atom or scenario text did not parse.
    Parse = 3,
    /// A sentence mentions an atom outside the space.
    MalformedSentence = 4,
    SpaceTooLarge = 5,
    InvalidArgument = 6,
    /// Conditioning on something with zero probability.
    ZeroProbability = 7,
    RuleInapplicable = 8,
    /// The scenario ran but stopped on an error; the trace is still returned.
    ScenarioHalted = 9,
    BufferTooSmall = 10,
    Panic = 99,
}

impl From<&Error> for BrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidAtom(_) | Error::DuplicateAtom(_) | Error::Syntax { .. } | Error::Scenario { .. } => {
                BrStatus::Parse
            }
            Error::MalformedSentence(_) => BrStatus::MalformedSentence,
            Error::SpaceTooLarge { .. } => BrStatus::SpaceTooLarge,
            Error::ZeroCondition(_) | Error::UndefinedConditional(_) => BrStatus::ZeroProbability,
            Error::RuleInapplicable(_)
            | Error::CorrelativeSources
            | Error::DisjointSources
            | Error::NoEvidence
            | Error::NotCombinable(..)
            | Error::UnusableScenario(_) => BrStatus::RuleInapplicable,
            _ => BrStatus::InvalidArgument,
        }
    }
}

/// A probability distribution over the worlds of a space.
pub struct BrDistribution(Distribution);

/// A prior plus the evidence conditioned on so far.
pub struct BrBelief(BeliefState);

/// A parsed scenario.
pub struct BrScenario(scenario::Scenario);

/// A frequency/confidence pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrTruth {
    pub frequency: f64,
    pub confidence: f64,
}

impl From<TruthValue> for BrTruth {
    fn from(tv: TruthValue) -> Self {
        BrTruth {
            frequency: tv.frequency(),
            confidence: tv.confidence(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(BrStatus::from(&e), e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(body: impl FnOnce() -> Outcome<()>) -> BrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(None);
            BrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            BrStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(BrStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(BrStatus::InvalidUtf8, e.to_string()))
}

unsafe fn sentence(p: *const c_char) -> Outcome<Sentence> {
    Ok(parse_sentence(text(p)?)?)
}

unsafe fn borrow<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failed call on this thread, or null after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn br_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn br_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a distribution over `n_atoms` atoms from `2^n_atoms` raw weights in
/// canonical world order (binary counting, first atom most significant, world
/// 0 all false). Weights are normalized.
///
/// # Safety
/// `atoms` must point to `n_atoms` NUL-terminated strings and `weights` to
/// `n_weights` doubles.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_new(
    atoms: *const *const c_char,
    n_atoms: usize,
    weights: *const f64,
    n_weights: usize,
    out: *mut *mut BrDistribution,
) -> BrStatus {
    guard(|| {
        if (atoms.is_null() && n_atoms > 0) || weights.is_null() {
            return Err(null());
        }
        let names = (0..n_atoms).map(|i| text(*atoms.add(i))).collect::<Outcome<Vec<_>>>()?;
        let space = Arc::new(Space::new(names)?);
        let raw = std::slice::from_raw_parts(weights, n_weights).to_vec();
        let d = Distribution::from_vec(space, raw)?;
        write(out, boxed(BrDistribution(d)))
    })
}

/// # Safety
/// `d` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_free(d: *mut BrDistribution) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of worlds, i.e. the length [`br_distribution_weights`] needs.
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_world_count(d: *const BrDistribution, out: *mut usize) -> BrStatus {
    guard(|| write(out, borrow(d)?.0.weights().len()))
}

/// Copies the normalized weights into `out[0..len]`.
///
/// # Safety
/// `d` must be a live handle and `out` must have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_weights(d: *const BrDistribution, out: *mut f64, len: usize) -> BrStatus {
    guard(|| {
        let w = borrow(d)?.0.weights();
        if out.is_null() {
            return Err(null());
        }
        if len < w.len() {
            return Err(Failure(
                BrStatus::BufferTooSmall,
                format!("need room for {} weights", w.len()),
            ));
        }
        ptr::copy_nonoverlapping(w.as_ptr(), out, w.len());
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle; `s` a NUL-terminated sentence.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_prob(d: *const BrDistribution, s: *const c_char, out: *mut f64) -> BrStatus {
    guard(|| write(out, borrow(d)?.0.prob(&sentence(s)?)?))
}

/// P(x | y). Leaves the distribution unchanged.
///
/// # Safety
/// `d` must be a live handle; `x` and `y` NUL-terminated sentences.
#[no_mangle]
pub unsafe extern "C" fn br_distribution_conditional(
    d: *const BrDistribution,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
) -> BrStatus {
    guard(|| write(out, borrow(d)?.0.conditional(&sentence(x)?, &sentence(y)?)?))
}

unsafe fn soft_update(
    d: *const BrDistribution,
    a: *const c_char,
    m: f64,
    out: *mut *mut BrDistribution,
    update: fn(&Distribution, &SoftEvidence) -> beliefrev::Result<Distribution>,
) -> BrStatus {
    guard(|| {
        let ev = SoftEvidence::new(sentence(a)?, m)?;
        let next = update(&borrow(d)?.0, &ev)?;
        write(out, boxed(BrDistribution(next)))
    })
}

/// New distribution with P(a) = m and conditionals given a and ¬a kept.
///
/// # Safety
/// `d` must be a live handle; `a` a NUL-terminated sentence.
#[no_mangle]
pub unsafe extern "C" fn br_jeffrey_update(
    d: *const BrDistribution,
    a: *const c_char,
    m: f64,
    out: *mut *mut BrDistribution,
) -> BrStatus {
    soft_update(d, a, m, out, jeffrey_update)
}

/// Same result as [`br_jeffrey_update`], computed as a mixture of conditionals.
///
/// # Safety
/// As [`br_jeffrey_update`].
#[no_mangle]
pub unsafe extern "C" fn br_virtual_update(
    d: *const BrDistribution,
    a: *const c_char,
    m: f64,
    out: *mut *mut BrDistribution,
) -> BrStatus {
    soft_update(d, a, m, out, virtual_update)
}

/// A belief state with `prior` and no evidence. The prior is copied.
///
/// # Safety
/// `prior` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn br_belief_new(prior: *const BrDistribution, out: *mut *mut BrBelief) -> BrStatus {
    guard(|| write(out, boxed(BrBelief(BeliefState::new(borrow(prior)?.0.clone())))))
}

/// # Safety
/// `st` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn br_belief_free(st: *mut BrBelief) {
    if !st.is_null() {
        drop(Box::from_raw(st));
    }
}

/// A new state that has also learned `a`. The input state is unchanged.
///
/// # Safety
/// `st` must be a live handle; `a` a NUL-terminated sentence.
#[no_mangle]
pub unsafe extern "C" fn br_belief_conditionalize(
    st: *const BrBelief,
    a: *const c_char,
    out: *mut *mut BrBelief,
) -> BrStatus {
    guard(|| {
        let next = borrow(st)?.0.conditionalize(&sentence(a)?)?;
        write(out, boxed(BrBelief(next)))
    })
}

/// # Safety
/// `st` must be a live handle; `x` a NUL-terminated sentence.
#[no_mangle]
pub unsafe extern "C" fn br_belief_bel(st: *const BrBelief, x: *const c_char, out: *mut f64) -> BrStatus {
    guard(|| write(out, borrow(st)?.0.bel(&sentence(x)?)?))
}

/// Number of conditioning steps taken.
///
/// # Safety
/// `st` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn br_belief_time(st: *const BrBelief, out: *mut usize) -> BrStatus {
    guard(|| write(out, borrow(st)?.0.time()))
}

/// # Safety
/// `source` must be NUL-terminated scenario text.
#[no_mangle]
pub unsafe extern "C" fn br_scenario_parse(source: *const c_char, out: *mut *mut BrScenario) -> BrStatus {
    guard(|| {
        let sc = scenario::parse_scenario(text(source)?)?;
        write(out, boxed(BrScenario(sc)))
    })
}

/// # Safety
/// `sc` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn br_scenario_free(sc: *mut BrScenario) {
    if !sc.is_null() {
        drop(Box::from_raw(sc));
    }
}

/// Runs a scenario and returns its trace text through `trace`, to be freed
/// with [`br_string_free`]. Returns `ScenarioHalted` (with the partial trace)
/// if a directive failed.
///
/// # Safety
/// `sc` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn br_scenario_run(
    sc: *const BrScenario,
    k: u32,
    tolerance: f64,
    trace: *mut *mut c_char,
) -> BrStatus {
    guard(|| {
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Failure(
                BrStatus::InvalidArgument,
                "tolerance must be non-negative".into(),
            ));
        }
        let options = RunOptions {
            horizon: Horizon::new(k)?,
            tolerance,
        };
        let result = scenario::run_scenario(&borrow(sc)?.0, options);
        write(trace, owned_string(result.to_string()))?;
        if result.failed() {
            return Err(Failure(BrStatus::ScenarioHalted, "scenario halted".into()));
        }
        Ok(())
    })
}

/// f = positive / total, c = total / (total + k).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_truth_from_counts(positive: u64, total: u64, k: u32, out: *mut BrTruth) -> BrStatus {
    guard(|| {
        let tv = nars::truth_from_counts(EvidenceCount::new(positive, total, Horizon::new(k)?)?)?;
        write(out, tv.into())
    })
}

/// Evidence weight c / (1 - c).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_weight(confidence: f64, out: *mut f64) -> BrStatus {
    guard(|| write(out, nars::weight(confidence)?))
}

fn premise(subject: &str, predicate: &str, tv: BrTruth, source: &str) -> Outcome<Judgment> {
    Ok(Judgment::new(
        Term::new(subject)?,
        Term::new(predicate)?,
        TruthValue::new(tv.frequency, tv.confidence)?,
        [source],
    )?)
}

/// Induction from M→P (`m_p`) and M→S (`m_s`) to S→P.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_induction(m_p: BrTruth, m_s: BrTruth, k: u32, out: *mut BrTruth) -> BrStatus {
    guard(|| {
        let nars = Calculus::new(Horizon::new(k)?);
        let j = nars.induction(&premise("m", "p", m_p, "a")?, &premise("m", "s", m_s, "b")?)?;
        write(out, j.truth().into())
    })
}

/// Revision of two judgments on the same statement from distinct sources.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_revise(a: BrTruth, b: BrTruth, out: *mut BrTruth) -> BrStatus {
    guard(|| {
        let j = nars::revise(&premise("s", "p", a, "a")?, &premise("s", "p", b, "b")?)?;
        write(out, j.truth().into())
    })
}
