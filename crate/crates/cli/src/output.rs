//! File writers: atomic replace, CSV and SVG.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use fractal_bound_core::{BoxCountResult, Point2};

/// Writes `contents` to a temporary sibling of `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// `x,y` header then one point per line, shortest round-trip formatting.
pub fn points_csv(points: &[Point2]) -> String {
    let mut s = String::with_capacity(points.len() * 40 + 4);
    s.push_str("x,y\n");
    for p in points {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    s
}

pub fn boxcount_csv(fit: &BoxCountResult) -> String {
    let mut s = String::from("k,epsilon,count\n");
    for ((k, eps), n) in fit.ks.iter().zip(&fit.scales).zip(&fit.counts) {
        let _ = writeln!(s, "{k},{eps},{n}");
    }
    s
}

/// Polyline through `(x, w(x))` in a `viewBox` spanning
/// `[0, 1] x [-y_bound, y_bound]`. SVG's y axis points down, so vertices are
/// written as `(x, -y)`.
pub fn curve_svg(points: &[Point2], y_bound: f64, title: &str) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 {} 1 {}\" width=\"1024\" height=\"512\" preserveAspectRatio=\"none\">",
        -y_bound,
        2.0 * y_bound
    );
    let _ = writeln!(s, "  <title>{title}</title>");
    s.push_str("  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" points=\"");
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{},{}", p.x, -p.y);
    }
    s.push_str("\"/>\n</svg>\n");
    s
}

/// Vertices of the polyline in a file written by [`curve_svg`], with the
/// y sign restored.
pub fn parse_svg_polyline(svg: &str) -> Option<Vec<Point2>> {
    let start = svg.find("points=\"")? + "points=\"".len();
    let end = start + svg[start..].find('"')?;
    svg[start..end]
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',')?;
            Some(Point2::new(x.parse().ok()?, -y.parse::<f64>().ok()?))
        })
        .collect()
}
