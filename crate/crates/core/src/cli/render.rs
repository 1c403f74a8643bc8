use std::fmt::Write;

use crate::scalar::Scalar;
use crate::verifier::VerificationReport;

/// Left-aligned text table with a header row and two-space gutters.
pub(crate) fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let text: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(text.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub(crate) fn reports<T: Scalar>(reports: &[VerificationReport<T>]) -> String {
    let mut out = String::new();
    for report in reports {
        let rows: Vec<Vec<String>> = report
            .records
            .iter()
            .map(|r| {
                vec![
                    r.power.to_string(),
                    r.range.clone(),
                    r.left.to_string(),
                    r.right.to_string(),
                    r.residual.to_string(),
                    if r.passed { "ok" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let _ = writeln!(
            out,
            "[{}] {}",
            report.kind,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        out.push_str(&table(&["power", "range", "left", "right", "residual", "status"], &rows));
    }
    out
}

pub(crate) fn columns<T: Scalar>(headers: [&str; 3], left: &[T], right: &[T]) -> String {
    let rows: Vec<Vec<String>> = (0..left.len().max(right.len()))
        .map(|i| {
            let cell = |side: &[T]| side.get(i).map(ToString::to_string).unwrap_or_default();
            vec![(i + 1).to_string(), cell(left), cell(right)]
        })
        .collect();
    table(&headers, &rows)
}

pub(crate) fn joined<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
