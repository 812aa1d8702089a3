//! JSON, LaTeX and CSV emitters.

use serde_json::Value;
use wbq_core::combinatorics::CellLabel;

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn latex_label(l: &CellLabel) -> String {
    let part = |p: &wbq_core::combinatorics::Partition| {
        if p.is_empty() {
            "\\varnothing".to_string()
        } else {
            format!("({})", p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    };
    format!("$({},({},{}))$", l.f, part(&l.l1), part(&l.l2))
}

/// Square integer table with labelled rows and columns.
pub fn latex_table(labels: &[CellLabel], rows: &[Vec<i64>]) -> String {
    let mut out = format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(labels.len()));
    out.push_str(&format!(" & {} \\\\\n\\hline\n", labels.iter().map(latex_label).collect::<Vec<_>>().join(" & ")));
    for (l, row) in labels.iter().zip(rows) {
        out.push_str(&format!("{} & {} \\\\\n", latex_label(l), row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" & ")));
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn csv_table(labels: &[CellLabel], rows: &[Vec<i64>]) -> String {
    let mut header = vec!["label".to_string()];
    header.extend(labels.iter().map(|l| l.to_string()));
    let body: Vec<Vec<String>> = labels
        .iter()
        .zip(rows)
        .map(|(l, r)| {
            let mut v = vec![l.to_string()];
            v.extend(r.iter().map(|x| x.to_string()));
            v
        })
        .collect();
    csv(&header, &body)
}

/// Generic key/value rows as a two-column LaTeX tabular.
pub fn latex_rows(header: &[String], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('&', "\\&").replace('^', "\\^{}").replace('#', "\\#").replace('%', "\\%").replace('{', "\\{").replace('}', "\\}");
    let mut out = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(header.len()));
    out.push_str(&format!("{} \\\\\n\\hline\n", header.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" & ")));
    for r in rows {
        out.push_str(&format!("{} \\\\\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" & ")));
    }
    out.push_str("\\end{tabular}\n");
    out
}
