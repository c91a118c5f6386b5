//! CSV artifacts and plotting scripts.
//!
//! Every number is written with 16 significant digits, so files written from
//! equal data are byte-identical and read back to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::harness::{CompareRow, ConvergenceRow, Solution};

/// Formats one value with 16 significant digits.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.15e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_value).unwrap_or_default()
}

/// CSV text with a header row and one row per cell. All columns must share
/// one length; at least one data column besides the coordinates is required.
pub fn format_columns_csv(names: &[&str], columns: &[&[f64]], n_coords: usize) -> Result<String, Error> {
    if names.len() != columns.len() {
        return Err(Error::LengthMismatch(names.len(), columns.len()));
    }
    if columns.len() <= n_coords {
        return Err(Error::Config("no fields to write".into()));
    }
    let rows = columns[0].len();
    if let Some(c) = columns.iter().find(|c| c.len() != rows) {
        return Err(Error::LengthMismatch(c.len(), rows));
    }
    let mut s = names.join(",");
    s.push('\n');
    for r in 0..rows {
        for (k, c) in columns.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            write!(s, "{}", fmt_value(c[r])).expect("string write");
        }
        s.push('\n');
    }
    Ok(s)
}

/// Field CSV of a solution: `x,<names>` in 1D, `x,y,rho,u,v,p` in 2D.
pub fn format_field_csv(sol: &Solution) -> String {
    let (xs, ys) = sol.coordinates();
    let (names, cols) = sol.columns();
    let mut header = vec!["x"];
    let mut columns: Vec<&[f64]> = vec![&xs];
    if let Some(ys) = &ys {
        header.push("y");
        columns.push(ys);
    }
    let n_coords = columns.len();
    header.extend(names);
    columns.extend(cols.iter().map(Vec::as_slice));
    format_columns_csv(&header, &columns, n_coords).expect("solutions always carry fields")
}

/// Writes `bytes` through a temporary file in the same directory and renames
/// it into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| Error::io(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn write_field_csv(path: &Path, sol: &Solution) -> Result<(), Error> {
    write_atomic(path, format_field_csv(sol).as_bytes())
}

/// Writes named columns, e.g. `x,reference,WENO-JS,...` profile overlays.
pub fn write_columns_csv(path: &Path, names: &[&str], columns: &[&[f64]]) -> Result<(), Error> {
    write_atomic(path, format_columns_csv(names, columns, 1)?.as_bytes())
}

pub const TABLE_HEADER: &str = "N,L1,L1_order,Linf,Linf_order";

pub fn format_table_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = format!("{TABLE_HEADER}\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            fmt_value(r.l1),
            fmt_opt(r.l1_order),
            fmt_value(r.linf),
            fmt_opt(r.linf_order)
        )
        .expect("string write");
    }
    s
}

pub fn write_table_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<(), Error> {
    write_atomic(path, format_table_csv(rows).as_bytes())
}

pub const COMPARE_HEADER: &str = "scheme,N,L1,Linf,status";

/// Long-form comparison table: one row per scheme.
pub fn format_compare_csv(rows: &[CompareRow]) -> String {
    let mut s = format!("{COMPARE_HEADER}\n");
    for r in rows {
        let status = match &r.error {
            None => "ok".to_string(),
            Some(e) => format!("\"failed: {}\"", e.replace('"', "'")),
        };
        writeln!(s, "{},{},{},{},{}", r.variant.label(), r.n, fmt_opt(r.l1), fmt_opt(r.linf), status)
            .expect("string write");
    }
    s
}

pub fn write_compare_csv(path: &Path, rows: &[CompareRow]) -> Result<(), Error> {
    write_atomic(path, format_compare_csv(rows).as_bytes())
}

fn parse_err(path: &Path, detail: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), detail: detail.into() }
}

/// Parses numeric CSV text into its header and columns. Lines starting with
/// `#` are ignored.
pub fn parse_columns_csv(path: &Path, text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), Error> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty());
    let header: Vec<String> =
        lines.next().ok_or_else(|| parse_err(path, "empty file"))?.split(',').map(String::from).collect();
    let mut cols = vec![Vec::new(); header.len()];
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(parse_err(
                path,
                format!("row {} has {} fields, expected {}", k + 1, fields.len(), header.len()),
            ));
        }
        for (c, f) in cols.iter_mut().zip(fields) {
            c.push(f.trim().parse().map_err(|_| parse_err(path, format!("row {}: `{f}` is not a number", k + 1)))?);
        }
    }
    Ok((header, cols))
}

pub fn read_columns_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_columns_csv(path, &text)
}

pub fn read_table_csv(path: &Path) -> Result<Vec<ConvergenceRow>, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    if lines.next() != Some(TABLE_HEADER) {
        return Err(parse_err(path, "unexpected table header"));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| parse_err(path, format!("`{s}` is not a number")));
    let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(parse_err(path, format!("bad row `{line}`")));
            }
            Ok(ConvergenceRow {
                n: f[0].parse().map_err(|_| parse_err(path, format!("bad N `{}`", f[0])))?,
                l1: num(f[1])?,
                l1_order: opt(f[2])?,
                linf: num(f[3])?,
                linf_order: opt(f[4])?,
            })
        })
        .collect()
}

/// Which plotting script to generate.
#[derive(Debug, Clone, PartialEq)]
pub enum PlotKind {
    /// Gnuplot overlay of every data column of a 1D CSV against `x`; the
    /// column named `reference` (if any) is drawn as a line.
    Overlay { csv: String, title: String },
    /// Matplotlib density contours of a 2D field CSV.
    Contour { csv: String, title: String, levels: usize },
}

/// Writes a plotting script next to its CSV. CSV paths are relative to the
/// script's directory and must exist.
pub fn emit_plot_script(path: &Path, kind: &PlotKind) -> Result<(), Error> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let csv = match kind {
        PlotKind::Overlay { csv, .. } | PlotKind::Contour { csv, .. } => csv,
    };
    let csv_path = dir.join(csv);
    if !csv_path.is_file() {
        return Err(Error::io(&csv_path, std::io::Error::new(std::io::ErrorKind::NotFound, "plot input is missing")));
    }
    let script = match kind {
        PlotKind::Overlay { csv, title } => {
            let (header, _) = read_columns_csv(&csv_path)?;
            let mut s = String::new();
            writeln!(s, "# gnuplot script; run from this directory: gnuplot -p {}", file_name(path)).unwrap();
            writeln!(s, "set datafile separator ','").unwrap();
            writeln!(s, "set key outside right").unwrap();
            writeln!(s, "set title '{title}'").unwrap();
            writeln!(s, "set xlabel 'x'").unwrap();
            let curves: Vec<String> = header
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, name)| {
                    let style = if name == "reference" || name == "exact" {
                        "lines lw 2 lc rgb 'black'"
                    } else {
                        "linespoints pt 6 ps 0.6"
                    };
                    format!("'{csv}' using 1:{} with {style} title '{name}'", k + 1)
                })
                .collect();
            writeln!(s, "plot {}", curves.join(", \\\n     ")).unwrap();
            s
        }
        PlotKind::Contour { csv, title, levels } => {
            let mut s = String::new();
            writeln!(s, "# matplotlib script; run from this directory: python3 {}", file_name(path)).unwrap();
            writeln!(s, "import numpy as np").unwrap();
            writeln!(s, "import matplotlib.pyplot as plt").unwrap();
            writeln!(s, "d = np.genfromtxt('{csv}', delimiter=',', names=True)").unwrap();
            writeln!(s, "xs, ys = np.unique(d['x']), np.unique(d['y'])").unwrap();
            writeln!(s, "rho = d['rho'].reshape(len(ys), len(xs))").unwrap();
            writeln!(s, "fig, ax = plt.subplots()").unwrap();
            writeln!(s, "ax.contour(xs, ys, rho, levels={levels}, colors='k', linewidths=0.5)").unwrap();
            writeln!(s, "ax.set_aspect('equal')").unwrap();
            writeln!(s, "ax.set_title('{title}')").unwrap();
            writeln!(s, "fig.savefig('{}.png', dpi=200, bbox_inches='tight')", csv.trim_end_matches(".csv")).unwrap();
            s
        }
    };
    write_atomic(path, script.as_bytes())
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    #[test]
    fn sixteen_significant_digits() {
        assert_eq!(fmt_value(1.0), "1.000000000000000e0");
        assert_eq!(fmt_value(-0.1), "-1.000000000000000e-1");
        for v in [std::f64::consts::PI, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let back: f64 = fmt_value(v).parse().unwrap();
            assert!((back - v).abs() <= 1e-15 * v.abs(), "{v}");
        }
    }

    #[test]
    fn empty_field_list_is_rejected() {
        let x = [0.0, 1.0];
        assert!(matches!(format_columns_csv(&["x"], &[&x], 1), Err(Error::Config(_))));
        assert!(format_columns_csv(&["x", "u"], &[&x, &[1.0]], 1).is_err());
    }

    #[test]
    fn field_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let grid = Grid1D::new(7, 0.0, 1.0).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|x| (x * 3.0).exp()).collect();
        let sol = Solution::Scalar { grid, u: u.clone() };
        let path = dir.path().join("f.csv");
        write_field_csv(&path, &sol).unwrap();
        let (header, cols) = read_columns_csv(&path).unwrap();
        assert_eq!(header, vec!["x", "u"]);
        // Rewriting what was read gives the same bytes.
        let again = Solution::Scalar { grid, u: cols[1].clone() };
        assert_eq!(format_field_csv(&again), fs::read_to_string(&path).unwrap());
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut rows = vec![
            ConvergenceRow { n: 10, l1: 1e-3, linf: 2e-3, l1_order: None, linf_order: None },
            ConvergenceRow { n: 20, l1: 3.1e-5, linf: 6.7e-5, l1_order: None, linf_order: None },
        ];
        crate::harness::fill_orders(&mut rows);
        let path = dir.path().join("t.csv");
        write_table_csv(&path, &rows).unwrap();
        let back = read_table_csv(&path).unwrap();
        assert_eq!(back[0], rows[0]);
        assert_eq!(back[1].n, 20);
        assert!((back[1].l1_order.unwrap() - rows[1].l1_order.unwrap()).abs() < 1e-14);
        assert_eq!(format_table_csv(&back), fs::read_to_string(&path).unwrap());
    }

    #[test]
    fn plot_scripts() {
        let dir = tempfile::tempdir().unwrap();
        let x = [0.0, 0.5];
        write_columns_csv(&dir.path().join("p.csv"), &["x", "reference", "WENO-JS", "MWENO-P"], &[&x, &x, &x, &x])
            .unwrap();
        let script = dir.path().join("p.gp");
        let kind = PlotKind::Overlay { csv: "p.csv".into(), title: "t".into() };
        emit_plot_script(&script, &kind).unwrap();
        let text = fs::read_to_string(&script).unwrap();
        assert_eq!(text.matches("'p.csv' using").count(), 3);
        emit_plot_script(&script, &kind).unwrap();
        assert_eq!(text, fs::read_to_string(&script).unwrap());

        let missing = PlotKind::Contour { csv: "none.csv".into(), title: "t".into(), levels: 30 };
        assert!(emit_plot_script(&dir.path().join("c.py"), &missing).unwrap_err().is_io());
    }
}
