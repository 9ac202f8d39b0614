//! Minimal dependency-free SVG plots: a fixed 800x600 viewport, axes in
//! bits, one polyline per curve, and a legend. Output is deterministic so
//! plots diff cleanly.

use rate_regions::geometry::RatePair;
use rate_regions::Envelope;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

pub struct SvgPlot {
    curves: Vec<(String, Vec<(f64, f64)>)>,
    markers: Vec<(String, f64, f64)>,
    x_max: f64,
    y_max: f64,
}

impl SvgPlot {
    pub fn new() -> Self {
        Self {
            curves: Vec::new(),
            markers: Vec::new(),
            x_max: 0.0,
            y_max: 0.0,
        }
    }

    pub fn add_envelope(&mut self, label: &str, env: &Envelope) {
        let mut pts: Vec<(f64, f64)> = env
            .grid()
            .iter()
            .zip(env.values().iter())
            .map(|(&x, &y)| (x, y))
            .collect();
        // Close the region boundary down to the axis.
        if let Some(&(x_last, _)) = pts.last() {
            pts.push((x_last, 0.0));
        }
        for &(x, y) in &pts {
            self.x_max = self.x_max.max(x);
            self.y_max = self.y_max.max(y);
        }
        self.curves.push((label.to_string(), pts));
    }

    pub fn add_marker(&mut self, label: &str, point: RatePair) {
        self.x_max = self.x_max.max(point.r1);
        self.y_max = self.y_max.max(point.r2);
        self.markers.push((label.to_string(), point.r1, point.r2));
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (WIDTH - 2.0 * MARGIN) / self.x_max.max(1e-9);
        let sy = (HEIGHT - 2.0 * MARGIN) / self.y_max.max(1e-9);
        (MARGIN + x * sx, HEIGHT - MARGIN - y * sy)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
        ));
        s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        // Axes.
        let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
        s.push_str(&format!(
            "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\"/>\n",
            WIDTH - MARGIN
        ));
        s.push_str(&format!(
            "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{MARGIN}\" stroke=\"black\"/>\n"
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"14\">R1 (bits)</text>\n",
            WIDTH / 2.0 - 30.0,
            HEIGHT - 20.0
        ));
        s.push_str(&format!(
            "<text x=\"18\" y=\"{}\" font-size=\"14\" transform=\"rotate(-90 18 {})\">R2 (bits)</text>\n",
            HEIGHT / 2.0,
            HEIGHT / 2.0
        ));
        // Ticks every 0.25 bits.
        let tick = 0.25;
        let mut t = 0.0;
        while t <= self.x_max + 1e-9 {
            let (px, py) = self.map(t, 0.0);
            s.push_str(&format!(
                "<line x1=\"{px}\" y1=\"{py}\" x2=\"{px}\" y2=\"{}\" stroke=\"black\"/>\n",
                py + 5.0
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\">{t:.2}</text>\n",
                px - 10.0,
                py + 18.0
            ));
            t += tick;
        }
        t = 0.0;
        while t <= self.y_max + 1e-9 {
            let (px, py) = self.map(0.0, t);
            s.push_str(&format!(
                "<line x1=\"{}\" y1=\"{py}\" x2=\"{px}\" y2=\"{py}\" stroke=\"black\"/>\n",
                px - 5.0
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\">{t:.2}</text>\n",
                px - 38.0,
                py + 4.0
            ));
            t += tick;
        }
        // Curves.
        for (i, (label, pts)) in self.curves.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| {
                    let (px, py) = self.map(x, y);
                    format!("{px:.2},{py:.2}")
                })
                .collect();
            s.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                path.join(" ")
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">{label}</text>\n",
                WIDTH - MARGIN - 120.0,
                MARGIN + 18.0 * i as f64
            ));
        }
        // Markers.
        for (label, x, y) in &self.markers {
            let (px, py) = self.map(*x, *y);
            s.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\" fill=\"black\"/>\n"
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"11\">{label}</text>\n",
                px + 6.0,
                py - 6.0
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}
