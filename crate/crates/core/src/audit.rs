//! An instrumented `f64` that records subtraction provenance and flop counts.
//!
//! High relative accuracy follows when every subtraction acts on initial
//! data (no inaccurate cancellation). [`Audited`] carries a provenance
//! [`Tag`] next to its value; while an [`AuditSession`] is open on the
//! current thread every arithmetic operation is counted and every
//! subtraction's operand tags are appended to a [`SubtractionTrace`].
//! Values are computed with plain `f64` arithmetic, so results are
//! bit-identical to the uninstrumented run.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::scalar::Scalar;

/// Where a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// The node `t_i` (1-based).
    Node(usize),
    /// The constant 1.
    One,
    /// Any other literal constant.
    Constant,
    /// Entry `b_i` of a right-hand side or data vector (1-based).
    Data(usize),
    /// Result of arithmetic on nodes and constants only.
    Derived,
    /// Result of arithmetic where some operand depended on data.
    DataDerived,
}

impl Tag {
    fn touches_data(self) -> bool {
        matches!(self, Tag::Data(_) | Tag::DataDerived)
    }

    fn combine(self, other: Tag) -> Tag {
        if self.touches_data() || other.touches_data() {
            Tag::DataDerived
        } else {
            Tag::Derived
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Node(i) => write!(f, "t{i}"),
            Tag::One => write!(f, "1"),
            Tag::Constant => write!(f, "const"),
            Tag::Data(i) => write!(f, "b{i}"),
            Tag::Derived => write!(f, "derived"),
            Tag::DataDerived => write!(f, "data-derived"),
        }
    }
}

/// Operand tags of one executed subtraction `left − right`.
pub type OperandPair = (Tag, Tag);

/// Every subtraction executed during a session, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubtractionTrace {
    pub pairs: Vec<OperandPair>,
}

impl SubtractionTrace {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlopCounts {
    pub add: u64,
    pub sub: u64,
    pub mul: u64,
    pub div: u64,
    pub neg: u64,
}

impl FlopCounts {
    pub fn total(&self) -> u64 {
        self.add + self.sub + self.mul + self.div
    }
}

/// What a finished session observed.
#[derive(Clone, Debug, Default)]
pub struct AuditLog {
    pub trace: SubtractionTrace,
    pub flops: FlopCounts,
}

#[derive(Default)]
struct Recorder {
    log: AuditLog,
}

thread_local! {
    static RECORDER: RefCell<Option<Recorder>> = const { RefCell::new(None) };
}

fn record(f: impl FnOnce(&mut AuditLog)) {
    RECORDER.with(|r| {
        if let Some(rec) = r.borrow_mut().as_mut() {
            f(&mut rec.log);
        }
    });
}

/// Recording scope for the current thread. Dropping it without
/// [`finish`](AuditSession::finish) discards the log.
pub struct AuditSession {
    _not_send: std::marker::PhantomData<*const ()>,
}

impl AuditSession {
    /// # Panics
    /// If a session is already open on this thread.
    pub fn start() -> Self {
        RECORDER.with(|r| {
            let mut slot = r.borrow_mut();
            assert!(slot.is_none(), "an audit session is already open on this thread");
            *slot = Some(Recorder::default());
        });
        Self {
            _not_send: std::marker::PhantomData,
        }
    }

    pub fn finish(self) -> AuditLog {
        let log = RECORDER.with(|r| r.borrow_mut().take()).map(|rec| rec.log);
        std::mem::forget(self);
        log.unwrap_or_default()
    }
}

impl Drop for AuditSession {
    fn drop(&mut self) {
        RECORDER.with(|r| r.borrow_mut().take());
    }
}

/// Runs `f` inside a fresh session and returns its result with the log.
pub fn audited<T>(f: impl FnOnce() -> T) -> (T, AuditLog) {
    let session = AuditSession::start();
    let out = f();
    (out, session.finish())
}

/// `f64` with a provenance tag.
#[derive(Clone, Copy, Debug)]
pub struct Audited {
    pub value: f64,
    pub tag: Tag,
}

impl Audited {
    pub fn new(value: f64, tag: Tag) -> Self {
        Self { value, tag }
    }

    pub fn node(index: usize, value: f64) -> Self {
        Self::new(value, Tag::Node(index))
    }

    pub fn data(index: usize, value: f64) -> Self {
        Self::new(value, Tag::Data(index))
    }
}

impl PartialEq for Audited {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Audited {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl Add for Audited {
    type Output = Audited;
    fn add(self, rhs: Audited) -> Audited {
        record(|log| log.flops.add += 1);
        Audited::new(self.value + rhs.value, self.tag.combine(rhs.tag))
    }
}

impl Sub for Audited {
    type Output = Audited;
    fn sub(self, rhs: Audited) -> Audited {
        record(|log| {
            log.flops.sub += 1;
            log.trace.pairs.push((self.tag, rhs.tag));
        });
        Audited::new(self.value - rhs.value, self.tag.combine(rhs.tag))
    }
}

impl Mul for Audited {
    type Output = Audited;
    fn mul(self, rhs: Audited) -> Audited {
        record(|log| log.flops.mul += 1);
        Audited::new(self.value * rhs.value, self.tag.combine(rhs.tag))
    }
}

impl Div for Audited {
    type Output = Audited;
    fn div(self, rhs: Audited) -> Audited {
        record(|log| log.flops.div += 1);
        Audited::new(self.value / rhs.value, self.tag.combine(rhs.tag))
    }
}

impl Neg for Audited {
    type Output = Audited;
    fn neg(self) -> Audited {
        record(|log| log.flops.neg += 1);
        let tag = if self.tag.touches_data() { Tag::DataDerived } else { Tag::Derived };
        Audited::new(-self.value, tag)
    }
}

impl Scalar for Audited {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        let tag = if num == den { Tag::One } else { Tag::Constant };
        Audited::new(f64::from_ratio(num, den), tag)
    }

    fn from_rational(value: &Rational) -> Self {
        let tag = if *value == 1 { Tag::One } else { Tag::Constant };
        Audited::new(value.to_f64(), tag)
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_f64(self.value)
    }

    fn is_zero(&self) -> bool {
        self.value == 0.0
    }
}

/// A subtraction shape the audit accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AllowedPair {
    /// `1 − t_k`.
    OneMinusNode,
    /// `t_i − t_j` with `i > j`.
    LaterMinusEarlierNode,
    /// Any subtraction with at least one operand derived from data.
    InvolvesData,
}

impl AllowedPair {
    fn admits(self, (left, right): OperandPair) -> bool {
        match self {
            AllowedPair::OneMinusNode => left == Tag::One && matches!(right, Tag::Node(_)),
            AllowedPair::LaterMinusEarlierNode => {
                matches!((left, right), (Tag::Node(i), Tag::Node(j)) if i > j)
            }
            AllowedPair::InvolvesData => left.touches_data() || right.touches_data(),
        }
    }
}

pub type Policy = BTreeSet<AllowedPair>;

/// The shapes a decomposition from nodes may subtract.
pub fn node_policy() -> Policy {
    [AllowedPair::OneMinusNode, AllowedPair::LaterMinusEarlierNode].into()
}

/// [`node_policy`] plus subtractions that involve right-hand-side data.
pub fn solve_policy() -> Policy {
    let mut p = node_policy();
    p.insert(AllowedPair::InvolvesData);
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub checked: usize,
    /// Position in the trace and the offending pair.
    pub violations: Vec<(usize, OperandPair)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} subtractions)", self.checked);
        }
        write!(f, "fail: {} of {} subtractions violate the policy", self.violations.len(), self.checked)?;
        for (pos, (l, r)) in self.violations.iter().take(5) {
            write!(f, "; #{pos}: {l} - {r}")?;
        }
        Ok(())
    }
}

pub fn audit_subtractions(trace: &SubtractionTrace, policy: &Policy) -> AuditReport {
    let violations = trace
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, pair)| !policy.iter().any(|p| p.admits(**pair)))
        .map(|(i, pair)| (i, *pair))
        .collect();
    AuditReport {
        checked: trace.len(),
        violations,
    }
}
