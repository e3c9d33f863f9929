//! Fixed-layout text rendering of an [`EvaluationReport`]: the summary
//! block, the detailed per-class table and the confusion matrix.

use super::EvaluationReport;

/// Formats a statistic the way the summary block prints doubles: fixed
/// decimals with trailing zeros (and a trailing dot) trimmed.
pub fn fmt_stat(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

fn opt_stat(v: Option<f64>, decimals: usize) -> String {
    v.map(|v| fmt_stat(v, decimals))
        .unwrap_or_else(|| "?".into())
}

/// Single letter names used in the confusion matrix header.
fn class_letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("c{i}")
    }
}

/// Renders the report as text: summary statistics, per-class table and
/// confusion matrix. Percentages print with 4 decimals, per-class rates
/// with 3, bits with 4; missing values print as `?`, never NaN.
pub fn render_report(report: &EvaluationReport) -> String {
    let mut out = String::new();
    out.push_str("=====\n");

    let line = |out: &mut String, label: &str, width: usize, value: String| {
        out.push_str(&format!("{label:<width$}{value}\n"));
    };

    line(
        &mut out,
        "Correctly Classified Instances",
        34,
        format!(
            "{}    {} %",
            report.correct,
            fmt_stat(report.correct_pct(), 4)
        ),
    );
    line(
        &mut out,
        "Incorrectly Classified Instances",
        34,
        format!(
            "{}    {} %",
            report.incorrect(),
            fmt_stat(report.incorrect_pct(), 4)
        ),
    );
    line(&mut out, "Kappa statistic", 34, fmt_stat(report.kappa, 4));
    line(
        &mut out,
        "K&B Relative Info Score",
        33,
        format!("{} %", fmt_stat(report.kb.relative_pct, 4)),
    );
    line(
        &mut out,
        "K&B Information Score",
        33,
        format!(
            "{} bits    {} bits/instance",
            fmt_stat(report.kb.total_bits, 4),
            fmt_stat(report.kb_bits_per_instance(), 4)
        ),
    );
    line(
        &mut out,
        "Class complexity | order 0",
        33,
        format!(
            "{} bits  {} bits/instance",
            fmt_stat(report.complexity.order0_bits, 4),
            fmt_stat(report.order0_bits_per_instance(), 4)
        ),
    );
    line(
        &mut out,
        "Class complexity | scheme",
        33,
        format!(
            "{} bits  {} bits/instance",
            fmt_stat(report.complexity.scheme_bits, 4),
            fmt_stat(report.scheme_bits_per_instance(), 4)
        ),
    );
    line(
        &mut out,
        "Complexity improvement (Sf)",
        33,
        format!(
            "{} bits  {} bits/instance",
            fmt_stat(report.sf_bits(), 4),
            fmt_stat(report.sf_bits_per_instance(), 4)
        ),
    );
    line(
        &mut out,
        "Mean absolute error",
        33,
        fmt_stat(report.errors.mae, 4),
    );
    line(
        &mut out,
        "Root mean squared error",
        33,
        fmt_stat(report.errors.rmse, 4),
    );
    line(
        &mut out,
        "Relative absolute error",
        33,
        format!("{} %", opt_stat(report.errors.rae_pct, 4)),
    );
    line(
        &mut out,
        "Root relative squared error",
        33,
        format!("{} %", opt_stat(report.errors.rrse_pct, 4)),
    );
    line(
        &mut out,
        "Total Number of Instances",
        32,
        report.n.to_string(),
    );

    out.push('\n');
    out.push_str(&format!(
        "{:<17}{:<9}{:<9}{:<11}{:<8}{:<11}{:<10}Class\n",
        "", "TP Rate", "FP Rate", "Precision", "Recall", "F-Measure", "ROC Area"
    ));
    for (row, label) in report.per_class.rows.iter().zip(report.confusion.labels()) {
        out.push_str(&format!(
            "{:<17}{:<9}{:<9}{:<11}{:<8}{:<11}{:<10}{}\n",
            "",
            fmt_stat(row.tp_rate, 3),
            fmt_stat(row.fp_rate, 3),
            fmt_stat(row.precision, 3),
            fmt_stat(row.recall, 3),
            fmt_stat(row.f_measure, 3),
            opt_stat(row.roc_area, 3),
            label
        ));
    }
    let w = &report.per_class.weighted;
    out.push_str(&format!(
        "{:<17}{:<9}{:<9}{:<11}{:<8}{:<11}{:<10}\n",
        "Weighted Avg.",
        fmt_stat(w.tp_rate, 3),
        fmt_stat(w.fp_rate, 3),
        fmt_stat(w.precision, 3),
        fmt_stat(w.recall, 3),
        fmt_stat(w.f_measure, 3),
        opt_stat(w.roc_area, 3)
    ));

    out.push('\n');
    let letters: Vec<String> = (0..report.confusion.n_classes())
        .map(class_letter)
        .collect();
    out.push_str(&format!("{} <-- classified as\n", letters.join(" ")));
    for (i, row) in report.confusion.counts().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&format!(
            "{} | {} = {}\n",
            cells.join(" "),
            letters[i],
            report.confusion.labels()[i]
        ));
    }
    out
}
