use std::fmt::Write;

use orthocircles::Circle;

const MARGIN: f64 = 0.05;

/// SVG drawing with the y axis pointing up and a 5% margin around the
/// circles' bounding box.
pub fn render(circles: &[Circle], width: f64, labels: bool) -> String {
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (-1.0, -1.0, 1.0, 1.0);
    if !circles.is_empty() {
        lo_x = circles
            .iter()
            .map(|c| c.center.x - c.radius)
            .fold(f64::INFINITY, f64::min);
        hi_x = circles
            .iter()
            .map(|c| c.center.x + c.radius)
            .fold(f64::NEG_INFINITY, f64::max);
        lo_y = circles
            .iter()
            .map(|c| c.center.y - c.radius)
            .fold(f64::INFINITY, f64::min);
        hi_y = circles
            .iter()
            .map(|c| c.center.y + c.radius)
            .fold(f64::NEG_INFINITY, f64::max);
    }
    let (w, h) = (hi_x - lo_x, hi_y - lo_y);
    let (mx, my) = (MARGIN * w, MARGIN * h);
    let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
    let height = width * vh / vw;
    let stroke = vw.max(vh) / 500.0;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"{} {} {vw} {vh}\">",
        lo_x - mx,
        -hi_y - my,
    );
    let _ = writeln!(s, "<g fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\">");
    for c in circles {
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            c.center.x, -c.center.y, c.radius
        );
    }
    s.push_str("</g>\n");
    if labels {
        let size = vw.max(vh) / 60.0;
        let _ = writeln!(
            s,
            "<g font-family=\"sans-serif\" font-size=\"{size}\" text-anchor=\"middle\">"
        );
        for (i, c) in circles.iter().enumerate() {
            let _ = writeln!(s, "<text x=\"{}\" y=\"{}\">{i}</text>", c.center.x, -c.center.y);
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
