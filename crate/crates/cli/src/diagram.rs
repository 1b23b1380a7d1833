//! DOT, SVG and TikZ output. Every diagram starts with a versioned header comment.

use std::fmt::Write;

use mckay_core::{Analysis, WeightVector};

use crate::json::orientation_colour;

pub const HEADER: &str = "mckay-lab diagram v1";

/// The McKay quiver drawn on its torus fundamental domain.
///
/// With `ray`, arrows vanishing on that divisor are black and solid and
/// the rest grey and dashed; otherwise arrows are coloured by orientation.
pub fn quiver_dot(a: &Analysis, ray: Option<usize>) -> String {
    let g = &a.group;
    let q = &a.data.quiver;
    let mut s = String::new();
    writeln!(s, "// {HEADER}").unwrap();
    writeln!(s, "digraph quiver {{").unwrap();
    writeln!(s, "  label=\"McKay quiver of {g}\";").unwrap();
    writeln!(s, "  node [shape=circle, fontsize=10];").unwrap();
    for c in g.characters() {
        let [x, y] = q.positions[c.index()];
        // shear so the three orientations sit at 120 degrees
        let (px, py) = (x as f64 + 0.5 * y as f64, y as f64 * 0.866);
        let extra = match ray {
            Some(r) => match a.data.graphs[r].as_ref() {
                Some(ss) => format!(", xlabel=\"{}\"", ss.class(c)),
                None => String::new(),
            },
            None => String::new(),
        };
        writeln!(s, "  c{} [label=\"{}\", pos=\"{px:.3},{py:.3}!\"{extra}];", c.0, g.label(c)).unwrap();
    }
    for ar in &q.arrows {
        let head = ar.head(g);
        let style = match ray {
            Some(r) if a.data.tables[r].vanishes_arrow(ar) => "color=black, style=solid".to_string(),
            Some(_) => "color=grey, style=dashed".to_string(),
            None => format!("color={}", orientation_colour(ar.orientation)),
        };
        writeln!(s, "  c{} -> c{} [label=\"{}\", {style}];", ar.tail.0, head.0, ar.orientation).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Planar position of a junior point in the unit triangle.
fn place(w: &WeightVector, size: f64) -> (f64, f64) {
    let n = w.den as f64;
    let (b, c) = (w.num[1] as f64 / n, w.num[2] as f64 / n);
    let x = b + 0.5 * c;
    let y = c * 0.866_025_403_784_438_6;
    (size * (0.05 + 0.9 * x), size * (0.95 - 0.9 * y))
}

fn vertex_caption(a: &Analysis, r: usize) -> String {
    let (case, m) = &a.marked.vertices[r];
    let chars: Vec<String> = m.characters().into_iter().map(|c| a.group.label(c)).collect();
    if chars.is_empty() {
        case.to_string()
    } else {
        format!("{case} {}", chars.join(" "))
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Marked triangulation of the junior simplex as SVG.
pub fn simplex_svg(a: &Analysis) -> String {
    let size = 600.0;
    let mut s = String::new();
    writeln!(s, "<!-- {HEADER} -->").unwrap();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", xml_escape(&a.group.to_string())).unwrap();
    for (e, edge) in a.fan.edges().iter().enumerate() {
        let [u, v] = edge.rays;
        let (p, q) = (place(&a.fan.rays()[u], size), place(&a.fan.rays()[v], size));
        writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"{}\"/>",
            p.0,
            p.1,
            q.0,
            q.1,
            if edge.boundary { 2 } else { 1 }
        )
        .unwrap();
        if let Some(c) = a.marked.edge_character(e) {
            writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\" fill=\"blue\">{}</text>",
                (p.0 + q.0) / 2.0,
                (p.1 + q.1) / 2.0,
                xml_escape(&a.group.label(c))
            )
            .unwrap();
        }
    }
    for (r, w) in a.fan.rays().iter().enumerate() {
        let (x, y) = place(w, size);
        writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"red\"/>").unwrap();
        if !w.is_corner() {
            writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">{}</text>",
                x + 4.0,
                y - 4.0,
                xml_escape(&vertex_caption(a, r))
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Marked triangulation of the junior simplex as a TikZ picture.
pub fn simplex_tikz(a: &Analysis) -> String {
    let size = 10.0;
    let mut s = String::new();
    writeln!(s, "% {HEADER}").unwrap();
    writeln!(s, "% {}", a.group).unwrap();
    writeln!(s, "\\begin{{tikzpicture}}[yscale=-1]").unwrap();
    for (e, edge) in a.fan.edges().iter().enumerate() {
        let [u, v] = edge.rays;
        let (p, q) = (place(&a.fan.rays()[u], size), place(&a.fan.rays()[v], size));
        let width = if edge.boundary { "thick" } else { "thin" };
        let label = match a.marked.edge_character(e) {
            Some(c) => format!(" node[midway, font=\\tiny, blue] {{{}}}", tex_label(&a.group.label(c))),
            None => String::new(),
        };
        writeln!(s, "  \\draw[{width}] ({:.3},{:.3}) -- ({:.3},{:.3}){label};", p.0, p.1, q.0, q.1).unwrap();
    }
    for (r, w) in a.fan.rays().iter().enumerate() {
        let (x, y) = place(w, size);
        let label = if w.is_corner() {
            String::new()
        } else {
            format!(" node[above right, font=\\tiny] {{{}}}", tex_label(&vertex_caption(a, r)))
        };
        writeln!(s, "  \\fill[red] ({x:.3},{y:.3}) circle (1.5pt){label};").unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

/// `χ3` becomes `\(\chi_{3}\)`; other words pass through.
fn tex_label(s: &str) -> String {
    s.split(' ')
        .map(|w| match w.strip_prefix('χ') {
            Some(k) => format!("\\(\\chi_{{{k}}}\\)"),
            None => w.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
