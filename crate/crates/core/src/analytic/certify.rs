//! Branch-and-bound certificate that `f >= θ` on `[η, 1−η]²`.
//!
//! Boxes are processed one generation at a time. Each box gets two lower
//! bounds for `f` and keeps the larger:
//!
//! * a monotone bound from `f = g(xy) / (g(x) + g(y))` with `g` decreasing;
//! * a centered (mean-value) bound `f(c) − |∂f(B)|·r`, which is second-order
//!   accurate and needed near the minimizer where `f − θ` is tiny.
//!
//! A box is accepted once its bound reaches `θ`. If some box centre has a
//! certified value below `θ` the bound is refuted; the search then keeps
//! only boxes that may still contain the global minimum and shrinks them so
//! the failure is reported where it lives.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::interval::{self, Interval};
use super::{f_ratio_unchecked, AnalyticError, PHI};
use crate::exec;

/// Failing boxes listed in full in a certificate; the rest are only counted.
const LISTED_FAILURES: usize = 32;

const LIMITATION: &str = "certified region is [eta, 1-eta]^2 only; the boundary strips \
are covered by dense sampling, which is evidence and not proof";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: Interval,
    pub y: Interval,
}

impl Rect {
    pub fn center(&self) -> (f64, f64) {
        (self.x.mid(), self.y.mid())
    }

    fn split(&self) -> (Rect, Rect) {
        if self.y.width() > self.x.width() {
            let (a, b) = self.y.split();
            (Rect { x: self.x, y: a }, Rect { x: self.x, y: b })
        } else {
            let (a, b) = self.x.split();
            (Rect { x: a, y: self.y }, Rect { x: b, y: self.y })
        }
    }

    fn max_width(&self) -> f64 {
        self.x.width().max(self.y.width())
    }

    fn key(&self) -> [u64; 4] {
        [
            self.x.lo.to_bits(),
            self.y.lo.to_bits(),
            self.x.hi.to_bits(),
            self.y.hi.to_bits(),
        ]
    }

    pub fn distance_to(&self, px: f64, py: f64) -> f64 {
        let (cx, cy) = self.center();
        (cx - px).hypot(cy - py)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyParams {
    pub theta: f64,
    pub eta: f64,
    pub max_depth: u32,
    pub box_budget: u64,
    /// Once refuted, failing boxes are shrunk to this width.
    pub localize_width: f64,
    pub strip_samples: usize,
}

impl Default for CertifyParams {
    fn default() -> Self {
        CertifyParams {
            theta: 0.809016,
            eta: 1e-4,
            max_depth: 60,
            box_budget: 10_000_000,
            localize_width: 1e-4,
            strip_samples: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxStatus {
    Accepted,
    /// Dropped after refutation: its lower bound exceeds a known value below `θ`.
    Pruned,
    /// Shrunk to the localisation width while still possibly below `θ`.
    Localized,
    DepthLimit,
    Unprocessed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailingBox {
    pub rect: Rect,
    pub depth: u32,
    pub lower_bound: f64,
    /// Upper end of the enclosure of `f` at the box centre.
    pub center_value: f64,
    pub status: BoxStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Refuted,
    DepthLimit,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripScan {
    pub samples_per_strip: usize,
    pub min_value: f64,
    pub argmin: (f64, f64),
    pub all_above_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub threshold: f64,
    pub region: Rect,
    pub eta: f64,
    pub boxes_processed: u64,
    pub max_depth_used: u32,
    pub verified: bool,
    pub outcome: Outcome,
    pub trace_digest: String,
    pub accepted_boxes: u64,
    /// Smallest lower bound among accepted boxes.
    pub min_accepted_bound: Option<f64>,
    pub failing_box_count: u64,
    /// Largest distance from a failing box centre to `(φ, φ)`.
    pub max_failing_distance_to_phi: Option<f64>,
    pub failing_boxes: Vec<FailingBox>,
    pub worst_box: Option<FailingBox>,
    pub strips: StripScan,
    pub limitation: String,
}

struct Evaluation {
    lower: f64,
    center_hi: f64,
}

fn enclose_at_point(x: f64, y: f64) -> Interval {
    let (xi, yi) = (Interval::point(x), Interval::point(y));
    interval::g(xi * yi) / (interval::g(xi) + interval::g(yi))
}

fn evaluate(rect: &Rect) -> Evaluation {
    let (x, y) = (rect.x, rect.y);
    let xy = x * y;
    let num = interval::g(xy);
    let gx = interval::g(x);
    let gy = interval::g(y);
    let den = gx + gy;
    let monotone = (num / den).lo;

    let (cx, cy) = rect.center();
    let center = enclose_at_point(cx, cy);
    // ∂f/∂x = (y g'(xy) D − N g'(x)) / D², symmetric in y.
    let gp_xy = interval::g_prime(xy);
    let den_sq = den * den;
    let dfdx = (y * gp_xy * den - num * interval::g_prime(x)) / den_sq;
    let dfdy = (x * gp_xy * den - num * interval::g_prime(y)) / den_sq;
    let rx = (cx - x.lo).max(x.hi - cx).next_up();
    let ry = (cy - y.lo).max(y.hi - cy).next_up();
    let spread = dfdx * Interval::radius(rx) + dfdy * Interval::radius(ry);
    let centered = (center + spread).lo;

    Evaluation {
        lower: monotone.max(centered),
        center_hi: center.hi,
    }
}

fn validate(p: &CertifyParams) -> Result<(), AnalyticError> {
    let bad = |msg: String| Err(AnalyticError::Parameter(msg));
    if !(p.eta > 0.0 && p.eta < 0.1) {
        return bad(format!("eta must lie in (0, 0.1), got {}", p.eta));
    }
    if !(p.theta > 0.0 && p.theta < 1.0) {
        return bad(format!("theta must lie in (0, 1), got {}", p.theta));
    }
    if p.max_depth == 0 || p.box_budget == 0 {
        return bad("depth and box budget must be positive".into());
    }
    if p.localize_width.is_nan() || p.localize_width <= 0.0 {
        return bad(format!(
            "localize_width must be positive, got {}",
            p.localize_width
        ));
    }
    if p.strip_samples == 0 {
        return bad("strip_samples must be positive".into());
    }
    Ok(())
}

/// Runs the branch-and-bound and the boundary-strip scan.
///
/// A threshold at or above the true minimum `1/(2φ)` cannot be certified;
/// such runs end refuted (or by depth/budget when `θ` equals the minimum).
pub fn certify_lower_bound(params: &CertifyParams) -> Result<Certificate, AnalyticError> {
    validate(params)?;
    let theta = params.theta;
    let side = Interval::new(params.eta, 1.0 - params.eta);
    let region = Rect { x: side, y: side };

    let mut frontier: Vec<(Rect, u32)> = vec![(region, 0)];
    let mut leaves: Vec<(Rect, BoxStatus)> = Vec::new();
    let mut failing: Vec<FailingBox> = Vec::new();
    let mut processed: u64 = 0;
    let mut accepted: u64 = 0;
    let mut min_accepted: Option<f64> = None;
    let mut max_depth_used = 0;
    let mut incumbent: Option<(f64, Rect)> = None;
    let mut budget_exhausted = false;

    while !frontier.is_empty() {
        if processed + frontier.len() as u64 > params.box_budget {
            budget_exhausted = true;
            break;
        }
        let evals = exec::map(&frontier, |(rect, _)| evaluate(rect));
        processed += frontier.len() as u64;

        for ((rect, _), e) in frontier.iter().zip(&evals) {
            if e.center_hi < theta && incumbent.is_none_or(|(v, _)| e.center_hi < v) {
                incumbent = Some((e.center_hi, *rect));
            }
        }

        let mut next = Vec::new();
        for ((rect, depth), e) in frontier.iter().zip(&evals) {
            max_depth_used = max_depth_used.max(*depth);
            if e.lower >= theta {
                accepted += 1;
                min_accepted = Some(min_accepted.map_or(e.lower, |m: f64| m.min(e.lower)));
                leaves.push((*rect, BoxStatus::Accepted));
                continue;
            }
            let fail = |status| FailingBox {
                rect: *rect,
                depth: *depth,
                lower_bound: e.lower,
                center_value: e.center_hi,
                status,
            };
            if let Some((best, _)) = incumbent {
                if e.lower > best {
                    leaves.push((*rect, BoxStatus::Pruned));
                    continue;
                }
                // A box is reported only once it is small and witnesses a value below θ;
                // loose enclosures elsewhere keep splitting until pruned.
                if rect.max_width() <= params.localize_width && e.center_hi < theta {
                    leaves.push((*rect, BoxStatus::Localized));
                    failing.push(fail(BoxStatus::Localized));
                    continue;
                }
            }
            if *depth >= params.max_depth {
                leaves.push((*rect, BoxStatus::DepthLimit));
                failing.push(fail(BoxStatus::DepthLimit));
                continue;
            }
            let (a, b) = rect.split();
            next.push((a, depth + 1));
            next.push((b, depth + 1));
        }
        frontier = next;
    }

    if budget_exhausted {
        let evals = exec::map(&frontier, |(rect, _)| evaluate(rect));
        for ((rect, depth), e) in frontier.iter().zip(&evals) {
            leaves.push((*rect, BoxStatus::Unprocessed));
            failing.push(FailingBox {
                rect: *rect,
                depth: *depth,
                lower_bound: e.lower,
                center_value: e.center_hi,
                status: BoxStatus::Unprocessed,
            });
        }
    }

    let outcome = if incumbent.is_some() {
        Outcome::Refuted
    } else if budget_exhausted {
        Outcome::BudgetExhausted
    } else if !failing.is_empty() {
        Outcome::DepthLimit
    } else {
        Outcome::Verified
    };

    // Boxes where f is lowest first; ties broken by geometry for determinism.
    let order = |a: &FailingBox, b: &FailingBox| {
        a.center_value
            .total_cmp(&b.center_value)
            .then(a.lower_bound.total_cmp(&b.lower_bound))
            .then(a.rect.key().cmp(&b.rect.key()))
    };
    failing.sort_by(order);
    let worst_box = match (outcome, incumbent) {
        (Outcome::Refuted, Some((value, rect))) => failing
            .iter()
            .find(|fb| fb.status == BoxStatus::Localized)
            .copied()
            .or(Some(FailingBox {
                rect,
                depth: 0,
                lower_bound: f64::NEG_INFINITY,
                center_value: value,
                status: BoxStatus::Pruned,
            })),
        _ => failing
            .iter()
            .min_by(|a, b| a.lower_bound.total_cmp(&b.lower_bound))
            .copied(),
    };

    leaves.sort_by_key(|(r, s)| (r.key(), *s as u8));
    let mut hasher = Sha256::new();
    for (rect, status) in &leaves {
        for k in rect.key() {
            hasher.update(k.to_le_bytes());
        }
        hasher.update([*status as u8]);
    }
    let trace_digest = hex::encode(hasher.finalize());

    let failing_box_count = failing.len() as u64;
    let max_failing_distance_to_phi = failing
        .iter()
        .map(|fb| fb.rect.distance_to(PHI, PHI))
        .reduce(f64::max);
    failing.truncate(LISTED_FAILURES);
    Ok(Certificate {
        threshold: theta,
        region,
        eta: params.eta,
        boxes_processed: processed,
        max_depth_used,
        verified: outcome == Outcome::Verified,
        outcome,
        trace_digest,
        accepted_boxes: accepted,
        min_accepted_bound: min_accepted,
        failing_box_count,
        max_failing_distance_to_phi,
        failing_boxes: failing,
        worst_box,
        strips: scan_strips(params),
        limitation: LIMITATION.to_string(),
    })
}

/// Dense sampling of `f` on the four strips of width `η` along the edges.
fn scan_strips(params: &CertifyParams) -> StripScan {
    let per_side = (params.strip_samples as f64).sqrt().ceil().max(2.0) as usize;
    let eta = params.eta;
    let across: Vec<f64> = (0..per_side)
        .map(|a| eta * a as f64 / (per_side - 1) as f64)
        .collect();
    let along: Vec<f64> = (0..per_side)
        .map(|b| b as f64 / (per_side - 1) as f64)
        .collect();
    let strips = exec::map_range(0..4, |s| {
        let mut best = (f64::INFINITY, (0.0, 0.0));
        for &u in &across {
            let u = if s % 2 == 0 { u } else { 1.0 - u };
            for &v in &along {
                let (x, y) = if s < 2 { (u, v) } else { (v, u) };
                let val = f_ratio_unchecked(x, y);
                if val < best.0 {
                    best = (val, (x, y));
                }
            }
        }
        best
    });
    let (min_value, argmin) =
        strips.into_iter().fold(
            (f64::INFINITY, (0.0, 0.0)),
            |a, b| if b.0 < a.0 { b } else { a },
        );
    StripScan {
        samples_per_strip: per_side * per_side,
        min_value,
        argmin,
        all_above_threshold: min_value >= params.theta,
    }
}
