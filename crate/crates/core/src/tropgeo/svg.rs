//! SVG drawings of tropical curves; fine curves get their base conditions
//! as edge and vertex labels.

use num_traits::ToPrimitive;

use super::{laurent_text, FineCurve, Locus, TropCurve};
use crate::rat::Rational;

const SCALE: f64 = 60.0;
const MARGIN: f64 = 1.5;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Frame {
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Frame {
    fn around(loci: &[&Locus]) -> Frame {
        let mut pts: Vec<[f64; 2]> = Vec::new();
        for l in loci {
            match l {
                Locus::Point(p) => pts.push([f(&p[0]), f(&p[1])]),
                Locus::Edge { start, end, .. } => {
                    for p in [start, end].into_iter().flatten() {
                        pts.push([f(&p[0]), f(&p[1])]);
                    }
                    if start.is_none() && end.is_none() {
                        let p = l.sample_point();
                        pts.push([f(&p[0]), f(&p[1])]);
                    }
                }
            }
        }
        if pts.is_empty() {
            pts.push([0.0, 0.0]);
        }
        let lo = [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min) - MARGIN);
        let hi =
            [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max) + MARGIN);
        Frame { lo, hi }
    }

    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.lo[0]) * SCALE, (self.hi[1] - p[1]) * SCALE)
    }

    /// Largest `s ≥ 0` keeping `p + s·d` inside the frame.
    fn reach(&self, p: [f64; 2], d: [f64; 2]) -> f64 {
        (0..2)
            .filter(|&k| d[k] != 0.0)
            .map(|k| {
                if d[k] > 0.0 {
                    (self.hi[k] - p[k]) / d[k]
                } else {
                    (self.lo[k] - p[k]) / d[k]
                }
            })
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    /// Visible segment of a locus, or a single point.
    fn clip(&self, l: &Locus) -> ([f64; 2], [f64; 2]) {
        match l {
            Locus::Point(p) => {
                let q = [f(&p[0]), f(&p[1])];
                (q, q)
            }
            Locus::Edge {
                dir, start, end, ..
            } => {
                let d = [dir[0] as f64, dir[1] as f64];
                let back = [-d[0], -d[1]];
                let conv = |p: &[Rational; 2]| [f(&p[0]), f(&p[1])];
                match (start, end) {
                    (Some(s), Some(e)) => (conv(s), conv(e)),
                    (Some(s), None) => {
                        let s = conv(s);
                        let t = self.reach(s, d);
                        (s, [s[0] + t * d[0], s[1] + t * d[1]])
                    }
                    (None, Some(e)) => {
                        let e = conv(e);
                        let t = self.reach(e, back);
                        ([e[0] + t * back[0], e[1] + t * back[1]], e)
                    }
                    (None, None) => {
                        let m = conv(&l.sample_point());
                        let (t1, t2) = (self.reach(m, back), self.reach(m, d));
                        (
                            [m[0] + t1 * back[0], m[1] + t1 * back[1]],
                            [m[0] + t2 * d[0], m[1] + t2 * d[1]],
                        )
                    }
                }
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn render(loci: &[&Locus], labels: &[Option<String>]) -> String {
    let frame = Frame::around(loci);
    let (w, h) = (
        (frame.hi[0] - frame.lo[0]) * SCALE,
        (frame.hi[1] - frame.lo[1]) * SCALE,
    );
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.1} {h:.1}\">\n"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (l, label) in loci.iter().zip(labels) {
        let (a, b) = frame.clip(l);
        let (x1, y1) = frame.px(a);
        let (x2, y2) = frame.px(b);
        match l {
            Locus::Point(_) => {
                out.push_str(&format!(
                    "<circle cx=\"{x1:.1}\" cy=\"{y1:.1}\" r=\"4\" fill=\"black\"/>\n"
                ));
            }
            Locus::Edge { .. } => {
                out.push_str(&format!(
                    "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\" stroke-width=\"2\"/>\n"
                ));
            }
        }
        if let Some(text) = label {
            let (lx, ly) = ((x1 + x2) / 2.0 + 6.0, (y1 + y2) / 2.0 - 6.0);
            out.push_str(&format!(
                "<text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"12\">{}</text>\n",
                escape(text)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn trop_curve_svg(c: &TropCurve) -> String {
    let loci: Vec<&Locus> = c.cells.iter().map(|c| &c.locus).collect();
    render(&loci, &vec![None; loci.len()])
}

pub fn fine_curve_svg(c: &FineCurve) -> String {
    let loci: Vec<&Locus> = c.cells().iter().map(|c| &c.locus).collect();
    let labels: Vec<Option<String>> = c
        .cells()
        .iter()
        .map(|cell| Some(format!("{} = 0", laurent_text(c.base(), &cell.condition))))
        .collect();
    render(&loci, &labels)
}
