//! CSV and SVG output.

use std::fmt::Write as _;

use cayley_core::confocal::Ellipsoid;
use cayley_core::simulator::Trajectory;

/// 17 significant digits, enough to round-trip any double.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per bounce: index, point, direction, caustics of the chord
/// leaving the point, cumulative length.
pub fn trajectory_csv(t: &Trajectory, last_caustics: Option<&[f64]>) -> Result<String, csv::Error> {
    let n = t.states[0].point.len();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n).map(|i| format!("v{i}")));
    header.extend((1..n).map(|k| format!("lambda{k}")));
    header.push("length".into());
    w.write_record(&header)?;
    for (k, s) in t.states.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(s.point.iter().map(|x| fmt17(*x)));
        row.extend(s.direction.iter().map(|x| fmt17(*x)));
        match t.caustics.get(k).map(Vec::as_slice).or(last_caustics) {
            Some(ls) => row.extend(ls.iter().map(|x| fmt17(*x))),
            None => row.extend(std::iter::repeat_n(String::new(), n - 1)),
        }
        row.push(fmt17(t.lengths[k]));
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// The ellipse, its caustic and the trajectory as an SVG 1.1 document.
/// The horizontal axis carries the larger axis parameter.
pub fn trajectory_svg(e: &Ellipsoid<f64>, lambdas: &[f64], t: &Trajectory) -> String {
    let (b, a) = (e.axes()[0], e.axes()[1]);
    let (rx, ry) = (a.sqrt(), b.sqrt());
    let size = 600.0;
    let scale = 0.45 * size / rx;
    let px = |x: f64, y: f64| (0.5 * size + scale * x, 0.5 * size - scale * y);
    let height = 2.0 * ry * scale + 0.1 * size;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{height:.1}" viewBox="0 {:.3} {size} {height:.3}">"#,
        0.5 * size - 0.5 * height
    );
    let _ = writeln!(
        s,
        r#"  <ellipse cx="{c}" cy="{c}" rx="{:.6}" ry="{:.6}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        rx * scale,
        ry * scale,
        c = 0.5 * size
    );
    for &l in lambdas {
        for branch in caustic_branches(a, b, l) {
            let pts: Vec<String> = branch
                .iter()
                .map(|(x, y)| {
                    let (u, v) = px(*x, *y);
                    format!("{u:.3},{v:.3}")
                })
                .collect();
            let _ = writeln!(
                s,
                r#"  <polyline points="{}" fill="none" stroke="steelblue" stroke-dasharray="4 3"/>"#,
                pts.join(" ")
            );
        }
    }
    // coordinates are stored by increasing axis parameter: (y, x)
    let pts: Vec<String> = t
        .states
        .iter()
        .map(|st| {
            let (u, v) = px(st.point[1], st.point[0]);
            format!("{u:.3},{v:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r#"  <polyline points="{}" fill="none" stroke="firebrick" stroke-width="1"/>"#,
        pts.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

/// Sampled confocal conic `x^2 / (a - l) + y^2 / (b - l) = 1`, clipped to
/// the ellipse for hyperbolas.
fn caustic_branches(a: f64, b: f64, l: f64) -> Vec<Vec<(f64, f64)>> {
    const N: usize = 200;
    if l < b {
        let (p, q) = ((a - l).sqrt(), (b - l).sqrt());
        let ring = (0..=N)
            .map(|i| {
                let th = std::f64::consts::TAU * i as f64 / N as f64;
                (p * th.cos(), q * th.sin())
            })
            .collect();
        return vec![ring];
    }
    let (p, q) = ((a - l).sqrt(), (l - b).sqrt());
    // the hyperbola meets the ellipse where y^2 = (l - b) b / l
    let y_max = ((l - b) * b / l).sqrt();
    let t_max = (y_max / q).asinh();
    [1.0, -1.0]
        .iter()
        .map(|sign| {
            (0..=N)
                .map(|i| {
                    let t = -t_max + 2.0 * t_max * i as f64 / N as f64;
                    (sign * p * t.cosh(), q * t.sinh())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_core::simulator::{launch_tangent, simulate};

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0 / 3.0, 2f64.sqrt(), 1e-300, 123456.789] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_shape() {
        let e = Ellipsoid::new(vec![1.0, 2.0]).unwrap();
        let s = launch_tangent(&e, &[2.0 / 3.0], 0).unwrap();
        let t = simulate(&e, &s, 10, 1e-8).unwrap();
        let text = trajectory_csv(&t, Some(&[2.0 / 3.0])).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "index,x1,x2,v1,v2,lambda1,length");
        assert_eq!(lines.len(), t.states.len() + 1);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn hyperbola_branches_end_on_the_ellipse() {
        let (a, b, l) = (3.0, 1.0, 2.0);
        for br in caustic_branches(a, b, l) {
            for (x, y) in [br[0], *br.last().unwrap()] {
                assert!((x * x / a + y * y / b - 1.0).abs() < 1e-12);
            }
        }
    }
}
