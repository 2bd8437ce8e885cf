//! Two-class classifier measurement: confusion counts at a threshold,
//! the ROC curve with its area, and the precision-recall curve.
//!
//! A sample is predicted positive when its score is greater than or equal
//! to the threshold. Curve sweeps visit each distinct score once, so tied
//! samples enter the positive side together.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One classifier output: a real score (higher means more positive) and
/// the ground-truth label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSample {
    pub score: f64,
    pub label: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub false_positives: usize,
    pub true_negatives: usize,
    pub false_negatives: usize,
}

/// `(fpr, tpr)` staircase from `(0, 0)` to `(1, 1)` plus the trapezoidal
/// area under it.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// `(recall, precision)` points, one per distinct threshold, ending at
/// full recall with precision equal to the positive prevalence.
#[derive(Debug, Clone, PartialEq)]
pub struct PrCurve {
    pub points: Vec<(f64, f64)>,
}

fn class_counts(samples: &[ScoredSample]) -> (usize, usize) {
    let positives = samples.iter().filter(|s| s.label).count();
    (positives, samples.len() - positives)
}

/// Counts the four confusion cells for one decision threshold.
pub fn confusion_at_threshold(
    samples: &[ScoredSample],
    threshold: f64,
) -> Result<ConfusionCounts> {
    let (positives, negatives) = class_counts(samples);
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateClassDistribution);
    }
    let mut counts = ConfusionCounts {
        true_positives: 0,
        false_positives: 0,
        true_negatives: 0,
        false_negatives: 0,
    };
    for s in samples {
        match (s.score >= threshold, s.label) {
            (true, true) => counts.true_positives += 1,
            (true, false) => counts.false_positives += 1,
            (false, false) => counts.true_negatives += 1,
            (false, true) => counts.false_negatives += 1,
        }
    }
    Ok(counts)
}

// Walk scores descending and call `emit(tp, fp)` after each group of tied
// scores has entered the predicted-positive side.
fn sweep_thresholds(samples: &[ScoredSample], mut emit: impl FnMut(usize, usize)) {
    let mut order: Vec<&ScoredSample> = samples.iter().collect();
    order.sort_unstable_by(|a, b| b.score.total_cmp(&a.score));
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0usize;
    while i < order.len() {
        let score = order[i].score;
        while i < order.len() && order[i].score == score {
            if order[i].label {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        emit(tp, fp);
    }
}

/// The ROC staircase and its trapezoidal area.
pub fn roc_curve(samples: &[ScoredSample]) -> Result<RocCurve> {
    let (positives, negatives) = class_counts(samples);
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateClassDistribution);
    }
    let mut points = vec![(0.0, 0.0)];
    sweep_thresholds(samples, |tp, fp| {
        points.push((fp as f64 / negatives as f64, tp as f64 / positives as f64));
    });

    let mut auc = 0.0;
    for pair in points.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        auc += (x1 - x0) * (y0 + y1) / 2.0;
    }
    Ok(RocCurve { points, auc })
}

/// The precision-recall curve, swept over the same distinct thresholds.
pub fn pr_curve(samples: &[ScoredSample]) -> Result<PrCurve> {
    let (positives, _) = class_counts(samples);
    if positives == 0 {
        return Err(Error::NoPositiveSamples);
    }
    let mut points = Vec::new();
    sweep_thresholds(samples, |tp, fp| {
        points.push((
            tp as f64 / positives as f64,
            tp as f64 / (tp + fp) as f64,
        ));
    });
    Ok(PrCurve { points })
}

/// Reads headerless `score,label` rows with labels in `{0, 1}`.
pub fn scores_from_csv(text: &str) -> Result<Vec<ScoredSample>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::CsvData {
            context: "score CSV",
            line: e.position().map(|p| p.line()).unwrap_or(samples.len() as u64 + 1),
            reason: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(Error::CsvData {
                context: "score CSV",
                line,
                reason: format!("row has {} fields, expected score,label", record.len()),
            });
        }
        let score: f64 = record[0].trim().parse().map_err(|_| Error::CsvData {
            context: "score CSV",
            line,
            reason: format!("{:?} is not a number", &record[0]),
        })?;
        if !score.is_finite() {
            return Err(Error::CsvData {
                context: "score CSV",
                line,
                reason: format!("score {score} is not finite"),
            });
        }
        let label = match record[1].trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::CsvData {
                    context: "score CSV",
                    line,
                    reason: format!("label {other:?} must be 0 or 1"),
                })
            }
        };
        samples.push(ScoredSample { score, label });
    }
    Ok(samples)
}

/// `fpr,tpr` rows followed by a trailing `# auc=` comment.
pub fn roc_to_csv(curve: &RocCurve) -> String {
    let mut out = String::new();
    for &(fpr, tpr) in &curve.points {
        out.push_str(&crate::fmt_sig17(fpr));
        out.push(',');
        out.push_str(&crate::fmt_sig17(tpr));
        out.push('\n');
    }
    out.push_str(&format!("# auc={}\n", crate::fmt_sig17(curve.auc)));
    out
}

/// `recall,precision` rows.
pub fn pr_to_csv(curve: &PrCurve) -> String {
    let mut out = String::new();
    for &(recall, precision) in &curve.points {
        out.push_str(&crate::fmt_sig17(recall));
        out.push(',');
        out.push_str(&crate::fmt_sig17(precision));
        out.push('\n');
    }
    out
}
