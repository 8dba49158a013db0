//! Domain model for cumulative scheduling instances.
//!
//! A [`CuspInstance`] is a set of activities competing for a single resource
//! of fixed capacity. Each activity has integer start/end bound variables and
//! a fixed processing time and height. All quantities are exact integers;
//! there is no floating point anywhere in the kernel.
//!
//! The module also provides the two primitives every checker is built on,
//! [`min_intersection`] and [`slack`], plus [`brute_force_check`], an
//! exhaustive feasibility test used as the universal oracle by the test
//! suites of the other modules.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer time point or duration, in abstract time units.
pub type Time = i64;
/// Signed resource-units × time-units quantity.
pub type Energy = i64;

/// One task: start/end bound variables plus fixed processing time and height.
///
/// The end bounds are stored explicitly but are linked to the start bounds:
/// `e_min = s_min + p` and `e_max = s_max + p` must hold at all times. The
/// constructors and update methods maintain the link; [`validate_instance`]
/// reports any drift in hand-built data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Activity {
    pub id: usize,
    pub s_min: Time,
    pub s_max: Time,
    pub e_min: Time,
    pub e_max: Time,
    /// Fixed processing time, `>= 0`.
    pub p: Time,
    /// Fixed height (resource consumption while running), `>= 0`.
    pub h: i64,
}

impl Activity {
    /// Builds an activity from its start window; end bounds are derived.
    pub fn new(id: usize, s_min: Time, s_max: Time, p: Time, h: i64) -> Self {
        Activity {
            id,
            s_min,
            s_max,
            e_min: s_min + p,
            e_max: s_max + p,
            p,
            h,
        }
    }

    /// A fixed activity: `s_min = s_max = s`.
    pub fn fixed(id: usize, s: Time, p: Time, h: i64) -> Self {
        Self::new(id, s, s, p, h)
    }

    /// Width of the start domain, `s_max - s_min`.
    pub fn width(&self) -> Time {
        self.s_max - self.s_min
    }

    /// True when the start (hence the whole placement) is decided.
    pub fn is_fixed(&self) -> bool {
        self.s_min == self.s_max
    }

    /// Tightens the earliest start, keeping the end bounds linked.
    pub fn set_s_min(&mut self, s_min: Time) {
        self.s_min = s_min;
        self.e_min = s_min + self.p;
    }

    /// Tightens the latest start, keeping the end bounds linked.
    pub fn set_s_max(&mut self, s_max: Time) {
        self.s_max = s_max;
        self.e_max = s_max + self.p;
    }
}

/// A Cumulative Scheduling Problem instance: activities, one capacity, and a
/// time horizon enclosing every bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspInstance {
    pub activities: Vec<Activity>,
    pub capacity: i64,
    /// Closed time window `[t_min, t_max]` containing all activity bounds.
    pub horizon: (Time, Time),
}

impl CuspInstance {
    /// Builds an instance with the default horizon
    /// `[min s_min, max e_max]` (or `[0, 0]` when empty).
    pub fn new(activities: Vec<Activity>, capacity: i64) -> Self {
        let horizon = default_horizon(&activities);
        CuspInstance {
            activities,
            capacity,
            horizon,
        }
    }

    /// Builds an instance with an explicit horizon.
    pub fn with_horizon(activities: Vec<Activity>, capacity: i64, horizon: (Time, Time)) -> Self {
        CuspInstance {
            activities,
            capacity,
            horizon,
        }
    }

    pub fn n(&self) -> usize {
        self.activities.len()
    }

    /// Wraps the instance as a single-resource project with no precedences.
    pub fn to_rcpsp(&self) -> RcpspInstance {
        RcpspInstance {
            jobs: self
                .activities
                .iter()
                .map(|a| Job {
                    s_min: a.s_min,
                    s_max: a.s_max,
                    p: a.p,
                    demands: vec![a.h],
                })
                .collect(),
            capacities: vec![self.capacity],
            precedences: Vec::new(),
            horizon: self.horizon,
        }
    }
}

/// Default horizon: `[min s_min, max e_max]`, or `[0, 0]` for no activities.
pub fn default_horizon(activities: &[Activity]) -> (Time, Time) {
    let t_min = activities.iter().map(|a| a.s_min).min().unwrap_or(0);
    let t_max = activities.iter().map(|a| a.e_max).max().unwrap_or(0);
    (t_min, t_max)
}

/// One job of a project instance: shared start bounds, one demand per resource.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub s_min: Time,
    pub s_max: Time,
    pub p: Time,
    /// `demands[r]` is the consumption on resource `r`; length equals the
    /// instance's resource count.
    pub demands: Vec<i64>,
}

impl Job {
    pub fn e_min(&self) -> Time {
        self.s_min + self.p
    }

    pub fn e_max(&self) -> Time {
        self.s_max + self.p
    }
}

/// A resource-constrained project: one cumulative constraint per resource over
/// a shared activity set, plus end-to-start precedences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcpspInstance {
    pub jobs: Vec<Job>,
    pub capacities: Vec<i64>,
    /// `(pred, succ)` index pairs; the graph must be acyclic.
    pub precedences: Vec<(usize, usize)>,
    pub horizon: (Time, Time),
}

impl RcpspInstance {
    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn n_resources(&self) -> usize {
        self.capacities.len()
    }

    /// The single-resource cumulative instance seen by resource `r`, using
    /// the supplied start bounds (one `(s_min, s_max)` pair per job).
    pub fn resource_view(&self, r: usize, bounds: &[(Time, Time)]) -> CuspInstance {
        let activities = self
            .jobs
            .iter()
            .zip(bounds)
            .enumerate()
            .map(|(id, (job, &(s_min, s_max)))| Activity::new(id, s_min, s_max, job.p, job.demands[r]))
            .collect();
        CuspInstance::with_horizon(activities, self.capacities[r], self.horizon)
    }

    /// Start bounds as stored on the jobs themselves.
    pub fn root_bounds(&self) -> Vec<(Time, Time)> {
        self.jobs.iter().map(|j| (j.s_min, j.s_max)).collect()
    }
}

/// Proof of infeasibility: an interval whose available area is exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub t1: Time,
    pub t2: Time,
    /// The (negative) slack of `[t1, t2]`.
    pub slack: Energy,
}

/// Outcome of a feasibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckResult {
    Feasible,
    Infeasible(Witness),
}

impl CheckResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CheckResult::Feasible)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CheckResult::Feasible => None,
            CheckResult::Infeasible(w) => Some(w),
        }
    }
}

impl Serialize for CheckResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CheckResult", 2)?;
        s.serialize_field("feasible", &self.is_feasible())?;
        s.serialize_field("witness", &self.witness())?;
        s.end()
    }
}

/// Minimum intersection of activity `a` with the interval `[t1, t2]`: the
/// least processing `a` must place inside the interval over all feasible
/// starts, `max(0, min(p, t2 - t1, e_min - t1, t2 - s_max))`.
///
/// Panics if `t1 >= t2` (contract violation).
pub fn min_intersection(a: &Activity, t1: Time, t2: Time) -> Time {
    assert!(t1 < t2, "min_intersection requires t1 < t2, got [{t1}, {t2}]");
    0.max(a.p.min(t2 - t1).min(a.e_min - t1).min(t2 - a.s_max))
}

/// Slack of `[t1, t2]`: available area `C * (t2 - t1)` minus the energy that
/// must be spent inside the interval. Negative slack proves infeasibility.
///
/// Panics if `t1 >= t2` (contract violation).
pub fn slack(inst: &CuspInstance, t1: Time, t2: Time) -> Energy {
    assert!(t1 < t2, "slack requires t1 < t2, got [{t1}, {t2}]");
    let required: Energy = inst
        .activities
        .iter()
        .map(|a| a.h * min_intersection(a, t1, t2))
        .sum();
    inst.capacity * (t2 - t1) - required
}

/// Exhaustive energetic feasibility test: evaluates the slack of every
/// integer pair `t1 < t2` inside the horizon. With integer bounds all slack
/// breakpoints are integral, so this enumeration is a sound oracle.
///
/// The witness is the lexicographically smallest failing `(t1, t2)`.
pub fn brute_force_check(inst: &CuspInstance) -> CheckResult {
    let (t_min, t_max) = inst.horizon;
    for t1 in t_min..t_max {
        for t2 in (t1 + 1)..=t_max {
            let sl = slack(inst, t1, t2);
            if sl < 0 {
                return CheckResult::Infeasible(Witness { t1, t2, slack: sl });
            }
        }
    }
    CheckResult::Feasible
}

/// A reported invariant violation; violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `s_min > s_max` for the activity.
    EmptyStartDomain { activity: usize },
    /// `e_min != s_min + p` or `e_max != s_max + p`.
    BrokenBoundLink { activity: usize },
    NegativeDuration { activity: usize },
    NegativeHeight { activity: usize },
    /// The activity can never run: `h > capacity`.
    ExceedsCapacity { activity: usize, h: i64, capacity: i64 },
    /// A bound escapes the instance horizon.
    OutsideHorizon { activity: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyStartDomain { activity } => {
                write!(f, "activity {activity}: empty start domain (s_min > s_max)")
            }
            Violation::BrokenBoundLink { activity } => {
                write!(f, "activity {activity}: end bounds not linked to start bounds")
            }
            Violation::NegativeDuration { activity } => {
                write!(f, "activity {activity}: negative processing time")
            }
            Violation::NegativeHeight { activity } => {
                write!(f, "activity {activity}: negative height")
            }
            Violation::ExceedsCapacity { activity, h, capacity } => {
                write!(f, "activity {activity}: height {h} exceeds capacity {capacity}")
            }
            Violation::OutsideHorizon { activity } => {
                write!(f, "activity {activity}: bounds escape the instance horizon")
            }
        }
    }
}

/// Checks every type invariant and returns the violations found; an empty
/// list means the instance is well formed.
pub fn validate_instance(inst: &CuspInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let (t_min, t_max) = inst.horizon;
    for a in &inst.activities {
        if a.s_min > a.s_max {
            out.push(Violation::EmptyStartDomain { activity: a.id });
        }
        if a.e_min != a.s_min + a.p || a.e_max != a.s_max + a.p {
            out.push(Violation::BrokenBoundLink { activity: a.id });
        }
        if a.p < 0 {
            out.push(Violation::NegativeDuration { activity: a.id });
        }
        if a.h < 0 {
            out.push(Violation::NegativeHeight { activity: a.id });
        }
        if a.h > inst.capacity {
            out.push(Violation::ExceedsCapacity {
                activity: a.id,
                h: a.h,
                capacity: inst.capacity,
            });
        }
        if a.s_min < t_min || a.e_max > t_max {
            out.push(Violation::OutsideHorizon { activity: a.id });
        }
    }
    out
}
