//! Poincare disk pictures of the triangle group `W^` for dihedral `W`.
//!
//! Floating point is used for drawing only; which tiles lie in the `Q`-orbit
//! of the base triangle is decided exactly through the projection to `W`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use coxtorus_core::coxeter::GroupTable;
use coxtorus_core::extension::{DiagramClass, HatGroup};

#[derive(Clone, Debug)]
pub struct Tile {
    /// ShortLex normal form in `W^` (letter 0 is `s^_0`).
    pub word: Vec<u8>,
    pub in_q: bool,
    pub corners: [[f64; 3]; 3],
}

/// Minkowski-type form `B^` in root coordinates.
struct Frame {
    gram: [[f64; 3]; 3],
    /// `e0` timelike at the barycenter of the base triangle, then two spacelike axes.
    axes: [[f64; 3]; 3],
}

impl Frame {
    fn new(h: &HatGroup) -> Self {
        let mut gram = [[0.0; 3]; 3];
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let m = h.matrix.get(i, j);
                *x = if i == j { 1.0 } else { -(PI / m as f64).cos() };
            }
        }
        let mut f = Frame { gram, axes: [[0.0; 3]; 3] };
        let inv = inverse(&gram);
        let mut e0 = [0.0; 3];
        for k in 0..3 {
            let v = f.normalize([inv[0][k], inv[1][k], inv[2][k]]);
            for i in 0..3 {
                e0[i] += v[i];
            }
        }
        let e0 = f.normalize(e0);
        let mut axes = [e0, [0.0; 3], [0.0; 3]];
        for (k, root) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]].into_iter().enumerate() {
            let mut a = root;
            let c = f.form(&a, &e0);
            for i in 0..3 {
                a[i] += c * e0[i];
            }
            for prev in axes.iter().take(k + 1).skip(1) {
                let c = f.form(&a, prev);
                for i in 0..3 {
                    a[i] -= c * prev[i];
                }
            }
            let n = f.form(&a, &a).sqrt();
            axes[k + 1] = [a[0] / n, a[1] / n, a[2] / n];
        }
        f.axes = axes;
        f
    }

    fn form(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// Scale a timelike vector onto the hyperboloid `B = -1`, keeping the sheet of `B(x, alpha_k) > 0`.
    fn normalize(&self, x: [f64; 3]) -> [f64; 3] {
        let n = (-self.form(&x, &x)).sqrt();
        [x[0] / n, x[1] / n, x[2] / n]
    }

    fn reflect(&self, s: usize, x: [f64; 3]) -> [f64; 3] {
        let c: f64 = (0..3).map(|j| self.gram[s][j] * x[j]).sum();
        let mut y = x;
        y[s] -= 2.0 * c;
        y
    }

    fn to_disk(&self, x: &[f64; 3]) -> (f64, f64) {
        let t = -self.form(x, &self.axes[0]);
        let a = self.form(x, &self.axes[1]);
        let b = self.form(x, &self.axes[2]);
        (a / (1.0 + t), b / (1.0 + t))
    }
}

fn inverse(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            out[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    out
}

/// `pi(w) = 1` in `W`, with `s^_0` sent to the distinguished reflection.
pub fn in_kernel(h: &HatGroup, t: &GroupTable, word: &[u8]) -> bool {
    let mut img = Vec::new();
    for &s in word {
        if s == 0 {
            img.extend_from_slice(&h.r_word);
        } else {
            img.push(s);
        }
    }
    t.index_of_word(&img) == t.identity()
}

/// Tiles `wD` for `w` of length at most `depth`, in depth-first ShortLex order.
pub fn tiles(h: &HatGroup, t: &GroupTable, depth: usize) -> Result<Vec<Tile>> {
    if h.rank() != 3 || h.class != DiagramClass::CompactHyperbolic {
        bail!("tessellation needs a compact hyperbolic triangle group, got {}", h.class.tag());
    }
    let frame = Frame::new(h);
    let inv = inverse(&frame.gram);
    let base: Vec<[f64; 3]> = (0..3).map(|k| frame.normalize([inv[0][k], inv[1][k], inv[2][k]])).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        let mut corners = [[0.0; 3]; 3];
        for (k, v) in base.iter().enumerate() {
            let mut x = *v;
            for &s in w.iter().rev() {
                x = frame.reflect(s as usize, x);
            }
            corners[k] = x;
        }
        out.push(Tile { in_q: in_kernel(h, t, &w), word: w.clone(), corners });
        if w.len() == depth {
            continue;
        }
        for s in (0..3u8).rev() {
            let mut c = w.clone();
            c.push(s);
            if h.normal_form(&c)?.word == c {
                stack.push(c);
            }
        }
    }
    Ok(out)
}

fn edge_points(frame: &Frame, a: &[f64; 3], b: &[f64; 3], steps: usize) -> Vec<(f64, f64)> {
    (0..steps)
        .map(|i| {
            let l = i as f64 / steps as f64;
            let x = [0, 1, 2].map(|k| (1.0 - l) * a[k] + l * b[k]);
            frame.to_disk(&frame.normalize(x))
        })
        .collect()
}

pub fn render(h: &HatGroup, tiles: &[Tile], title: &str) -> String {
    let frame = Frame::new(h);
    let size = 800.0;
    let scale = size / 2.0 - 10.0;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#, size);
    let _ = writeln!(svg, "<title>{}</title>", title);
    let _ = writeln!(svg, r##"<circle cx="{0}" cy="{0}" r="{1}" fill="#ffffff" stroke="#000000" stroke-width="1"/>"##, size / 2.0, scale);
    for tile in tiles {
        let mut pts = Vec::new();
        for k in 0..3 {
            pts.extend(edge_points(&frame, &tile.corners[k], &tile.corners[(k + 1) % 3], 8));
        }
        let fill = if tile.in_q {
            "#2e9e44"
        } else if tile.word.len() % 2 == 0 {
            "#f4f4f4"
        } else {
            "#c8c8c8"
        };
        let mut d = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, size / 2.0 + scale * x, size / 2.0 - scale * y);
        }
        let _ = writeln!(svg, r##"<path d="{} Z" fill="{}" stroke="#333333" stroke-width="0.3"/>"##, d, fill);
    }
    svg.push_str("</svg>\n");
    svg
}
