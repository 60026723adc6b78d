//! CSV and PGM encoders. All text output uses LF line endings.

use std::fmt::Write;

use optical_bloch::sweep::{FieldMap, LevelGrid, Quantization, TimeSeries};

/// 17 significant digits: enough to re-parse every double exactly.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `t` followed by one column per series column.
pub fn series_csv(series: &TimeSeries) -> String {
    let mut out = String::from("t");
    for c in &series.columns {
        out.push(',');
        out.push_str(c.name());
    }
    out.push('\n');
    for (i, t) in series.times.iter().enumerate() {
        out.push_str(&fmt_num(*t));
        for col in &series.values {
            out.push(',');
            out.push_str(&fmt_num(col[i]));
        }
        out.push('\n');
    }
    out
}

/// Several series on a shared time grid; column names are
/// `<column>[<label>=<value>]`.
pub fn multi_series_csv(label: &str, curves: &[(f64, TimeSeries)]) -> String {
    let mut out = String::from("t");
    for (v, s) in curves {
        for c in &s.columns {
            let _ = write!(out, ",{}[{label}={v}]", c.name());
        }
    }
    out.push('\n');
    let Some((_, first)) = curves.first() else { return out };
    for (i, t) in first.times.iter().enumerate() {
        out.push_str(&fmt_num(*t));
        for (_, s) in curves {
            for col in &s.values {
                out.push(',');
                out.push_str(&fmt_num(col[i]));
            }
        }
        out.push('\n');
    }
    out
}

/// Long format, one row per cell: `<y label>,t,<observable>`, y-major with
/// both coordinates ascending. Log-scaled axes print the exponent.
pub fn map_csv(map: &FieldMap) -> String {
    let mut out = format!("{},t,{}\n", map.y_label, map.observable.name());
    let ts = map.x_axis.coordinates();
    for (iy, y) in map.y_axis.coordinates().into_iter().enumerate() {
        let y = fmt_num(y);
        for (t, v) in ts.iter().zip(map.row(iy)) {
            let _ = writeln!(out, "{y},{},{}", fmt_num(*t), fmt_num(*v));
        }
    }
    out
}

/// Binary P5 graymap, maxval 255. The first image row is the largest y, so
/// the picture has y increasing upward and time to the right.
pub fn pgm(levels: &LevelGrid, q: &Quantization) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", levels.n_x, levels.n_y).into_bytes();
    out.reserve(levels.n_x * levels.n_y);
    for iy in (0..levels.n_y).rev() {
        out.extend((0..levels.n_x).map(|ix| q.gray(levels.get(iy, ix))));
    }
    out
}
