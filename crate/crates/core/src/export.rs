//! Plain-text emitters: CSV tables, plain PGM images, and the one-line
//! summaries the command-line tool prints.
//!
//! Float cells default to 6 significant digits; `FloatFormat::Full` switches
//! to shortest round-trip digits. Summary lines always use shortest
//! round-trip so they can be compared exactly.

use crate::analysis::Table1Report;
use crate::dipole::{FieldComponent, FieldMap, ResonanceScan};
use crate::error::{Error, Result};
use crate::pulse::{Matrix2, SearchTrace};
use crate::sfc::Trajectory;
use crate::tour::{PointSet, Tour};
use std::io::Write;
use std::str::FromStr;

/// Float rendering for CSV cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FloatFormat {
    /// 6 significant digits, scientific notation outside `1e-4..1e6`.
    #[default]
    Sig6,
    /// Shortest digits that round-trip to the same value.
    Full,
}

impl FloatFormat {
    pub fn format(self, v: f64) -> String {
        match self {
            FloatFormat::Full => format!("{v:?}"),
            FloatFormat::Sig6 => {
                if v == 0.0 {
                    return "0".into();
                }
                if !v.is_finite() {
                    return format!("{v}");
                }
                // The decimal exponent comes from the formatter rather than
                // log10 so boundary values never mis-bin.
                let sci = format!("{v:e}");
                let exp: i32 = sci
                    .split('e')
                    .nth(1)
                    .and_then(|e| e.parse().ok())
                    .unwrap_or(0);
                if !(-4..6).contains(&exp) {
                    format!("{v:.5e}")
                } else {
                    format!("{v:.*}", (5 - exp).max(0) as usize)
                }
            }
        }
    }
}

impl FromStr for FloatFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sig6" => Ok(FloatFormat::Sig6),
            "full" => Ok(FloatFormat::Full),
            other => Err(Error::InvalidConfig {
                what: "precision",
                details: format!("expected sig6|full, got {other:?}"),
            }),
        }
    }
}

/// `step,x,y` with integer cell coordinates.
pub fn write_trajectory_csv<W: Write + ?Sized>(w: &mut W, trajectory: &Trajectory) -> std::io::Result<()> {
    writeln!(w, "step,x,y")?;
    for (step, cell) in trajectory.cells().iter().enumerate() {
        writeln!(w, "{step},{},{}", cell.x, cell.y)?;
    }
    Ok(())
}

/// `i,j,x,y,Hx,Hy,Hz`, i fastest.
pub fn write_field_map_csv<W: Write + ?Sized>(
    w: &mut W,
    map: &FieldMap,
    fmt: FloatFormat,
) -> std::io::Result<()> {
    writeln!(w, "i,j,x,y,Hx,Hy,Hz")?;
    let n = map.grid_n();
    for j in 0..n {
        for i in 0..n {
            let p = map.config().sample_point(i, j);
            let h = map.at(i, j);
            writeln!(
                w,
                "{i},{j},{},{},{},{},{}",
                fmt.format(p[0]),
                fmt.format(p[1]),
                fmt.format(h[0]),
                fmt.format(h[1]),
                fmt.format(h[2]),
            )?;
        }
    }
    Ok(())
}

/// Plain (P2) PGM of one field component, 256 levels, map minimum black and
/// maximum white, rows top to bottom. A constant component renders black.
pub fn write_field_map_pgm<W: Write + ?Sized>(
    w: &mut W,
    map: &FieldMap,
    component: FieldComponent,
) -> std::io::Result<()> {
    let n = map.grid_n();
    let (lo, hi) = map.component_range(component);
    let span = hi - lo;
    writeln!(w, "P2")?;
    writeln!(w, "{n} {n}")?;
    writeln!(w, "255")?;
    let mut line = String::new();
    for j in (0..n).rev() {
        for i in 0..n {
            let v = map.component(i, j, component);
            let level = if span == 0.0 {
                0u32
            } else {
                ((v - lo) / span * 255.0).round() as u32
            };
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&level.to_string());
            // Plain PGM lines must stay at or below 70 characters.
            if line.len() >= 64 {
                writeln!(w, "{line}")?;
                line.clear();
            }
        }
    }
    if !line.is_empty() {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// `k,linear,hilbert,ref_linear,ref_hilbert,delta_linear,delta_hilbert`.
/// Reference and delta cells are empty for lags past the reference table.
pub fn write_table1_csv<W: Write + ?Sized>(
    w: &mut W,
    report: &Table1Report,
    fmt: FloatFormat,
) -> std::io::Result<()> {
    writeln!(
        w,
        "k,linear,hilbert,ref_linear,ref_hilbert,delta_linear,delta_hilbert"
    )?;
    use crate::analysis::{REFERENCE_HILBERT, REFERENCE_LINEAR};
    for k in 0..=report.k_max() {
        let (rl, rh, dl, dh) = if k < report.delta_linear.len() {
            (
                fmt.format(REFERENCE_LINEAR[k]),
                fmt.format(REFERENCE_HILBERT[k]),
                fmt.format(report.delta_linear[k]),
                fmt.format(report.delta_hilbert[k]),
            )
        } else {
            (String::new(), String::new(), String::new(), String::new())
        };
        writeln!(
            w,
            "{k},{},{},{rl},{rh},{dl},{dh}",
            fmt.format(report.linear.at(k)),
            fmt.format(report.hilbert.at(k)),
        )?;
    }
    Ok(())
}

/// `i,j,x,y,true_Hz,inferred_Hz,abs_err,flagged,step`, i fastest; `flagged`
/// is 0 or 1.
pub fn write_resonance_csv<W: Write + ?Sized>(
    w: &mut W,
    scan: &ResonanceScan,
    fmt: FloatFormat,
) -> std::io::Result<()> {
    writeln!(w, "i,j,x,y,true_Hz,inferred_Hz,abs_err,flagged,step")?;
    let n = scan.grid_n();
    for j in 0..n {
        for i in 0..n {
            let p = scan.map().config().sample_point(i, j);
            let true_hz = scan.map().component(i, j, FieldComponent::Z);
            let inferred = scan.inferred_at(i, j);
            writeln!(
                w,
                "{i},{j},{},{},{},{},{},{},{}",
                fmt.format(p[0]),
                fmt.format(p[1]),
                fmt.format(true_hz),
                fmt.format(inferred),
                fmt.format((inferred - true_hz).abs()),
                u8::from(scan.is_flagged(i, j)),
                scan.step_at(i, j),
            )?;
        }
    }
    Ok(())
}

/// `pos,point_index,x,y` in visit order.
pub fn write_tour_csv<W: Write + ?Sized>(
    w: &mut W,
    point_set: &PointSet,
    tour: &Tour,
    fmt: FloatFormat,
) -> std::io::Result<()> {
    writeln!(w, "pos,point_index,x,y")?;
    for (pos, &idx) in tour.order().iter().enumerate() {
        let p = point_set.points()[idx];
        writeln!(w, "{pos},{idx},{},{}", fmt.format(p[0]), fmt.format(p[1]))?;
    }
    Ok(())
}

/// `N=<n> A=<area> L=<length> L/sqrt(NA)=<ratio>`.
pub fn tour_summary(point_set: &PointSet, tour: &Tour) -> String {
    let n = point_set.len();
    let a = point_set.area();
    let l = tour.length();
    let ratio = l / ((n as f64) * a).sqrt();
    format!("N={n} A={a:?} L={l:?} L/sqrt(NA)={ratio:?}")
}

/// `step,Ex,Ey,J` in visit order.
pub fn write_search_trace_csv<W: Write + ?Sized>(
    w: &mut W,
    trace: &SearchTrace,
    fmt: FloatFormat,
) -> std::io::Result<()> {
    writeln!(w, "step,Ex,Ey,J")?;
    for (step, (e, j)) in trace.e_points.iter().zip(&trace.j_values).enumerate() {
        writeln!(
            w,
            "{step},{},{},{}",
            fmt.format(e[0]),
            fmt.format(e[1]),
            fmt.format(*j),
        )?;
    }
    Ok(())
}

/// `kind=<kind> lag1=<r> first_hit=<step|none>`; an undefined lag-1 prints
/// as `undefined`.
pub fn search_summary(trace: &SearchTrace) -> String {
    let lag1 = match trace.lag1_autocorr {
        Some(r) => format!("{r:?}"),
        None => "undefined".into(),
    };
    let hit = match trace.first_hit {
        Some(step) => step.to_string(),
        None => "none".into(),
    };
    format!("kind={} lag1={lag1} first_hit={hit}", trace.kind)
}

/// `entry,re,im` for the four entries `a11, a12, a21, a22`.
pub fn write_matrix_csv<W: Write + ?Sized>(w: &mut W, m: &Matrix2, fmt: FloatFormat) -> std::io::Result<()> {
    writeln!(w, "entry,re,im")?;
    for i in 0..2 {
        for j in 0..2 {
            let z = m.rows[i][j];
            writeln!(
                w,
                "a{}{},{},{}",
                i + 1,
                j + 1,
                fmt.format(z.re),
                fmt.format(z.im),
            )?;
        }
    }
    Ok(())
}
