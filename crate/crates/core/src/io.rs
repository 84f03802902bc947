//! Text formats: problem and pocket input files, OFF meshes, SVG drawings.
//!
//! Floats are written with `{}` formatting, which prints the shortest
//! decimal that parses back to the same `f64`.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::builder::ProblemInput;
use crate::earcut::{PocketPolygon, PolygonError, Triple};
use crate::mesh::{MeshError, TriMesh, VertexId};
use crate::predicates::Point2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(String),
    #[error("trailing content at line {0}")]
    Trailing(usize),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Non-empty, non-comment lines with their 1-based numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    fn next_fields(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Ok((i + 1, body.split_whitespace().collect()));
            }
        }
        Err(ParseError::Truncated(what.to_string()))
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.next_fields("") {
            Ok((line, _)) => Err(ParseError::Trailing(line)),
            Err(_) => Ok(()),
        }
    }
}

fn field<T: FromStr>(line: usize, fields: &[&str], k: usize, what: &str) -> Result<T, ParseError> {
    let raw = fields.get(k).ok_or_else(|| ParseError::Syntax {
        line,
        msg: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| ParseError::Syntax {
        line,
        msg: format!("bad {what} {raw:?}"),
    })
}

fn arity(line: usize, fields: &[&str], want: usize) -> Result<(), ParseError> {
    if fields.len() != want {
        return Err(ParseError::Syntax {
            line,
            msg: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    Ok(())
}

fn point_line(lines: &mut Lines, min_fields: usize) -> Result<Point2, ParseError> {
    let (line, f) = lines.next_fields("a point")?;
    if f.len() < 2 || f.len() > min_fields.max(2) {
        return Err(ParseError::Syntax {
            line,
            msg: format!("expected coordinates, found {} fields", f.len()),
        });
    }
    let p = Point2::new(field(line, &f, 0, "x")?, field(line, &f, 1, "y")?);
    if !p.is_finite() {
        return Err(ParseError::Syntax {
            line,
            msg: "non-finite coordinate".into(),
        });
    }
    Ok(p)
}

/// `P S`, then `P` lines `x y`, then `S` lines `i j`.
pub fn parse_problem(text: &str) -> Result<ProblemInput, ParseError> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.next_fields("the header")?;
    arity(line, &head, 2)?;
    let p: usize = field(line, &head, 0, "point count")?;
    let s: usize = field(line, &head, 1, "segment count")?;
    let mut points = Vec::with_capacity(p);
    for _ in 0..p {
        points.push(point_line(&mut lines, 2)?);
    }
    let mut segments = Vec::with_capacity(s);
    for _ in 0..s {
        let (line, f) = lines.next_fields("a segment")?;
        arity(line, &f, 2)?;
        segments.push((field(line, &f, 0, "index")?, field(line, &f, 1, "index")?));
    }
    lines.finish()?;
    Ok(ProblemInput { points, segments })
}

pub fn write_problem(input: &ProblemInput) -> String {
    let mut s = format!("{} {}\n", input.points.len(), input.segments.len());
    for p in &input.points {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    for (a, b) in &input.segments {
        let _ = writeln!(s, "{a} {b}");
    }
    s
}

/// `N`, then `N` lines `x y` in chain order.
pub fn parse_pocket(text: &str) -> Result<PocketPolygon, ParseError> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.next_fields("the vertex count")?;
    arity(line, &head, 1)?;
    let n: usize = field(line, &head, 0, "vertex count")?;
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        points.push(point_line(&mut lines, 2)?);
    }
    lines.finish()?;
    Ok(PocketPolygon::new(points)?)
}

pub fn write_pocket(poly: &PocketPolygon) -> String {
    let mut s = format!("{}\n", poly.len());
    for p in poly.points() {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    s
}

/// One `i j k` line per triangle.
pub fn write_triples(tris: &[Triple]) -> String {
    let mut s = String::new();
    for [a, b, c] in tris {
        let _ = writeln!(s, "{a} {b} {c}");
    }
    s
}

/// OFF text of the alive triangles, with `z = 0`.
pub fn write_off(mesh: &TriMesh) -> String {
    let mut s = format!("OFF\n{} {} 0\n", mesh.vertex_count(), mesh.triangle_count());
    for p in mesh.vertices() {
        let _ = writeln!(s, "{} {} 0", p.x, p.y);
    }
    for (_, [a, b, c]) in mesh.alive_triangles() {
        let _ = writeln!(s, "3 {} {} {}", a.0, b.0, c.0);
    }
    s
}

/// Vertices and triangles of an OFF file, faces in file order and
/// orientation. The `z` coordinate is ignored.
pub fn parse_off(text: &str) -> Result<(Vec<Point2>, Vec<[usize; 3]>), ParseError> {
    let mut lines = Lines::new(text);
    let (line, magic) = lines.next_fields("the OFF header")?;
    if magic != ["OFF"] {
        return Err(ParseError::Syntax {
            line,
            msg: "expected OFF".into(),
        });
    }
    let (line, counts) = lines.next_fields("the counts line")?;
    arity(line, &counts, 3)?;
    let nv: usize = field(line, &counts, 0, "vertex count")?;
    let nf: usize = field(line, &counts, 1, "face count")?;
    let mut points = Vec::with_capacity(nv);
    for _ in 0..nv {
        points.push(point_line(&mut lines, 3)?);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, f) = lines.next_fields("a face")?;
        arity(line, &f, 4)?;
        if f[0] != "3" {
            return Err(ParseError::Syntax {
                line,
                msg: format!("only triangles are supported, got a {}-gon", f[0]),
            });
        }
        faces.push([
            field(line, &f, 1, "index")?,
            field(line, &f, 2, "index")?,
            field(line, &f, 3, "index")?,
        ]);
    }
    lines.finish()?;
    Ok((points, faces))
}

/// Edges in black, constrained edges in red, fit into a 1024 square.
pub fn write_svg(mesh: &TriMesh) -> String {
    const SIZE: f64 = 1024.0;
    const MARGIN: f64 = 16.0;
    let pts = mesh.vertices();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    let extent = (hi_x - lo_x).max(hi_y - lo_y);
    let scale = if extent > 0.0 {
        (SIZE - 2.0 * MARGIN) / extent
    } else {
        1.0
    };
    // flip y so the drawing is not mirrored
    let map = |v: VertexId| {
        let p = pts[v.0];
        (
            MARGIN + (p.x - lo_x) * scale,
            SIZE - MARGIN - (p.y - lo_y) * scale,
        )
    };

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" \
         width=\"{SIZE}\" height=\"{SIZE}\">\n<g stroke=\"black\" stroke-width=\"1\">\n"
    );
    let line = |s: &mut String, a: VertexId, b: VertexId| {
        let ((x1, y1), (x2, y2)) = (map(a), map(b));
        let _ = writeln!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
    };
    for (t, tri) in mesh.alive_triangles() {
        for slot in 0..3 {
            let (a, b) = (tri[slot], tri[(slot + 1) % 3]);
            let first = match mesh.neighbor(t, slot) {
                Some(n) => t < n,
                None => true,
            };
            if first && !mesh.is_constrained(a, b) {
                line(&mut s, a, b);
            }
        }
    }
    s.push_str("</g>\n<g stroke=\"red\" stroke-width=\"2\">\n");
    for (a, b) in mesh.constraints() {
        line(&mut s, a, b);
    }
    s.push_str("</g>\n</svg>\n");
    s
}
