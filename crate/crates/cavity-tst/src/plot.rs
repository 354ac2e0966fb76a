//! Matplotlib script that redraws a preset from its CSV.

use std::fs;
use std::path::Path;

use crate::preset::preset;
use crate::sweep::{Column, Table};
use crate::AppError;

fn py_str(s: &str) -> String {
    format!("{s:?}")
}

/// Renders the script for a preset table. `csv_path` is the default input
/// location; the script also accepts the path as its first argument.
pub fn render_plot_script(table: &Table, csv_path: &str) -> Result<String, AppError> {
    let name = table.preset.as_deref().ok_or_else(|| AppError::usage("--plot-script needs --preset"))?;
    let p = preset(name)?;
    let spec = &p.plot;
    for c in &spec.y_columns {
        if table.column_index(*c).is_none() {
            return Err(AppError::usage(format!("table has no {c} column")));
        }
    }
    let has_curves = table.column_index(Column::CurveValue).is_some();
    let columns: Vec<String> = spec.y_columns.iter().map(|c| py_str(c.name())).collect();
    let curve_name = p.runs[0].curve.as_ref().map_or(String::new(), |c| c.name.clone());

    let mut s = String::new();
    s.push_str("#!/usr/bin/env python3\n");
    s.push_str(&format!("# {}: {}\n", p.name, p.description));
    s.push_str("import csv\nimport sys\n\nimport matplotlib.pyplot as plt\n\n");
    s.push_str(&format!("path = sys.argv[1] if len(sys.argv) > 1 else {}\n", py_str(csv_path)));
    s.push_str("with open(path, newline=\"\") as fh:\n    rows = list(csv.DictReader(fh))\n\n");
    s.push_str("def num(text):\n    # Empty cells become NaN so matplotlib leaves a gap.\n");
    s.push_str("    return float(text) if text else float(\"nan\")\n\n");
    s.push_str("curves = {}\nfor row in rows:\n");
    if has_curves {
        s.push_str("    curves.setdefault(row[\"curve_value\"], []).append(row)\n\n");
    } else {
        s.push_str("    curves.setdefault(\"\", []).append(row)\n\n");
    }
    s.push_str(&format!("columns = [{}]\n", columns.join(", ")));
    s.push_str(
        "fig, axes = plt.subplots(len(columns), 1, sharex=True, squeeze=False, \
         figsize=(6, 3 * len(columns)))\n",
    );
    s.push_str("for ax, col in zip(axes[:, 0], columns):\n");
    s.push_str("    for label, group in curves.items():\n");
    s.push_str("        xs = [num(r[\"value\"]) for r in group]\n");
    s.push_str("        ys = [num(r[col]) for r in group]\n");
    s.push_str(&format!(
        "        ax.plot(xs, ys, label={} + \" = \" + label if label else col)\n",
        py_str(&curve_name)
    ));
    if let Some(y) = spec.guide {
        s.push_str(&format!("    ax.axhline({y:?}, color=\"gray\", linestyle=\"--\", linewidth=0.8)\n"));
    }
    if spec.log_x {
        s.push_str("    ax.set_xscale(\"log\")\n");
    }
    s.push_str("    ax.set_ylabel(col)\n    ax.legend()\n");
    s.push_str(&format!("axes[-1, 0].set_xlabel({})\n", py_str(spec.x_label)));
    s.push_str("fig.tight_layout()\nplt.show()\n");
    Ok(s)
}

/// Writes [`render_plot_script`] to `path`.
pub fn emit_plot_script(table: &Table, path: &Path, csv_path: &str) -> Result<(), AppError> {
    let script = render_plot_script(table, csv_path)?;
    fs::write(path, script).map_err(|source| AppError::Io { path: path.to_path_buf(), source })
}
