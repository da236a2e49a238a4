//! SVG plot of the spectrum, its hull, the ellipse and its foci.
//!
//! One element per line so plots diff cleanly.

use num_complex::Complex64;
use spectral_ellipse::{HullPolygon, SpectralEllipse};
use std::fmt::Write;

pub const SIZE: f64 = 800.0;
const PADDING: f64 = 0.05;
const DOT_RADIUS: f64 = 3.0;
const CROSS_HALF: f64 = 5.0;

/// World to pixel map: uniform scale, y pointing up.
struct Viewport {
    center: Complex64,
    scale: f64,
}

impl Viewport {
    fn fit(points: &[Complex64]) -> Self {
        let (mut lo, mut hi) = (
            Complex64::new(f64::INFINITY, f64::INFINITY),
            Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for z in points {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        let mut span = (hi.re - lo.re).max(hi.im - lo.im);
        if !(span.is_finite() && span > 0.0) {
            span = 1.0;
        }
        let center = if lo.re.is_finite() {
            (lo + hi) * 0.5
        } else {
            Complex64::new(0.0, 0.0)
        };
        Self {
            center,
            scale: SIZE / (span * (1.0 + 2.0 * PADDING)),
        }
    }

    fn px(&self, z: Complex64) -> (f64, f64) {
        (
            SIZE / 2.0 + (z.re - self.center.re) * self.scale,
            SIZE / 2.0 - (z.im - self.center.im) * self.scale,
        )
    }
}

/// The padded box covers the hull and, if present, the ellipse and foci.
pub fn render(
    eigenvalues: &[Complex64],
    hull: &HullPolygon,
    ellipse: Option<&SpectralEllipse>,
) -> String {
    let mut extent: Vec<Complex64> = hull.vertices.clone();
    if let Some(e) = ellipse {
        let (a, b) = (e.semimajor, e.semiminor);
        let dx = (a * a * e.major_dir.re.powi(2) + b * b * e.major_dir.im.powi(2)).sqrt();
        let dy = (a * a * e.major_dir.im.powi(2) + b * b * e.major_dir.re.powi(2)).sqrt();
        extent.push(e.center + Complex64::new(dx, dy));
        extent.push(e.center - Complex64::new(dx, dy));
    }
    let vp = Viewport::fit(&extent);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();

    let pts: Vec<String> = hull
        .vertices
        .iter()
        .map(|&z| {
            let (x, y) = vp.px(z);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    writeln!(
        s,
        r#"<polygon class="hull" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        pts.join(" ")
    )
    .unwrap();

    if let Some(e) = ellipse {
        let (x1, y1) = vp.px(e.center + e.major_dir * e.semimajor);
        let (x2, y2) = vp.px(e.center - e.major_dir * e.semimajor);
        let rx = e.semimajor * vp.scale;
        let ry = e.semiminor * vp.scale;
        // y is flipped, so the rotation angle changes sign.
        let rot = -e.major_dir_angle().to_degrees() + 0.0;
        writeln!(
            s,
            r#"<path class="ellipse" d="M {x1:.3} {y1:.3} A {rx:.3} {ry:.3} {rot:.3} 0 1 {x2:.3} {y2:.3} A {rx:.3} {ry:.3} {rot:.3} 0 1 {x1:.3} {y1:.3} Z" fill="none" stroke="steelblue" stroke-width="1.5"/>"#
        )
        .unwrap();
        for f in e.foci {
            let (x, y) = vp.px(f);
            writeln!(
                s,
                r#"<path class="focus" d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="crimson" stroke-width="1.5"/>"#,
                x - CROSS_HALF,
                y - CROSS_HALF,
                x + CROSS_HALF,
                y + CROSS_HALF,
                x - CROSS_HALF,
                y + CROSS_HALF,
                x + CROSS_HALF,
                y - CROSS_HALF
            )
            .unwrap();
        }
    }

    for &z in eigenvalues {
        let (x, y) = vp.px(z);
        writeln!(
            s,
            r#"<circle class="eigenvalue" cx="{x:.3}" cy="{y:.3}" r="{DOT_RADIUS}" fill="black"/>"#
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_ellipse::{convex_hull, subset_ellipse};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triangle_plot() {
        let eig = [c(-1.0, 0.0), c(2.0, 0.0), c(0.0, 1.5)];
        let hull = convex_hull(&eig);
        let e = subset_ellipse(&eig).unwrap();
        let svg = render(&eig, &hull, Some(&e));
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("class=\"eigenvalue\"").count(), 3);
        assert_eq!(svg.matches("class=\"focus\"").count(), 2);
        assert_eq!(svg.matches(" A ").count(), 2);
        assert!(svg.contains("class=\"hull\""));
    }

    #[test]
    fn hull_fills_padded_box() {
        let eig = [c(0.0, 0.0), c(10.0, 0.0), c(10.0, 10.0), c(0.0, 10.0)];
        let svg = render(&eig, &convex_hull(&eig), None);
        // 5% of the 1.1 × span box on each side.
        let pad = SIZE * PADDING / (1.0 + 2.0 * PADDING);
        assert!(svg.contains(&format!("cx=\"{pad:.3}\"")), "{svg}");
        assert!(svg.contains(&format!("cy=\"{:.3}\"", SIZE - pad)), "{svg}");
    }

    #[test]
    fn single_point_does_not_divide_by_zero() {
        let eig = [c(5.0, 0.0)];
        let svg = render(&eig, &convex_hull(&eig), None);
        assert!(svg.contains("cx=\"400.000\" cy=\"400.000\""), "{svg}");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
