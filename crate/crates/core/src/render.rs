//! Plain PBM and SVG output, one pixel or unit rect per grid square.

use std::io::Write;

use crate::error::{Error, Result};
use crate::fractal::Prefractal;

/// One bit per grid cell over the bounding box of a prefractal.
///
/// `rows[0]` is the top row, i.e. the largest `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    pub origin: (i64, i64),
    pub width: usize,
    pub height: usize,
    rows: Vec<Vec<bool>>,
}

impl Bitmap {
    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    /// Pixel at column `a`, counted from the left, and row `c`, counted from
    /// the bottom.
    pub fn get(&self, a: usize, c: usize) -> bool {
        self.rows[self.height - 1 - c][a]
    }

    pub fn count_set(&self) -> usize {
        self.rows.iter().flatten().filter(|&&p| p).count()
    }

    /// Rows as strings of `on`/`off` characters, top first.
    pub fn to_text(&self, on: char, off: char) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in &self.rows {
            out.extend(row.iter().map(|&p| if p { on } else { off }));
            out.push('\n');
        }
        out
    }
}

fn bounds(p: &Prefractal) -> Result<(i64, i64, i64, i64)> {
    let squares = p.squares();
    if squares.is_empty() {
        return Err(Error::EmptyPrefractal);
    }
    let i_min = squares.first().map(|s| s.0).unwrap();
    let i_max = squares.last().map(|s| s.0).unwrap();
    let j_min = squares.iter().map(|s| s.1).min().unwrap();
    let j_max = squares.iter().map(|s| s.1).max().unwrap();
    Ok((i_min, i_max, j_min, j_max))
}

pub fn rasterize(p: &Prefractal) -> Result<Bitmap> {
    let (i_min, i_max, j_min, j_max) = bounds(p)?;
    let width = (i_max - i_min + 1) as usize;
    let height = (j_max - j_min + 1) as usize;
    let mut rows = vec![vec![false; width]; height];
    for &(i, j) in p.squares() {
        rows[(j_max - j) as usize][(i - i_min) as usize] = true;
    }
    Ok(Bitmap {
        origin: (i_min, j_min),
        width,
        height,
        rows,
    })
}

/// ASCII PBM (`P1`); a set pixel is `1`, i.e. black.
pub fn write_pbm<W: Write>(bitmap: &Bitmap, out: &mut W) -> Result<()> {
    writeln!(out, "P1")?;
    writeln!(out, "{} {}", bitmap.width, bitmap.height)?;
    let mut line = String::with_capacity(2 * bitmap.width);
    for row in bitmap.rows() {
        line.clear();
        for (k, &p) in row.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            line.push(if p { '1' } else { '0' });
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// SVG in grid units: square `(i, j)` becomes the unit rect at
/// `x = i, y = -(j + 1)`, so larger `j` is drawn higher.
pub fn write_svg<W: Write>(p: &Prefractal, out: &mut W) -> Result<()> {
    let (i_min, i_max, j_min, j_max) = bounds(p)?;
    let width = i_max - i_min + 1;
    let height = j_max - j_min + 1;
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" shape-rendering="crispEdges">"#,
        i_min,
        -(j_max + 1),
        width,
        height
    )?;
    for &(i, j) in p.squares() {
        writeln!(
            out,
            r#"<rect x="{}" y="{}" width="1" height="1" fill="black"/>"#,
            i,
            -(j + 1)
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::generate;
    use crate::radix::DigitSystem;

    fn prefractal(m: i64, b: i64, n: u32) -> Prefractal {
        generate(DigitSystem::new(m, b).unwrap(), n, 1_000_000).unwrap()
    }

    fn pbm(bitmap: &Bitmap) -> String {
        let mut buf = Vec::new();
        write_pbm(bitmap, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn svg(p: &Prefractal) -> String {
        let mut buf = Vec::new();
        write_svg(p, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn sierpinski_first_step() {
        let bm = rasterize(&prefractal(2, 0, 1)).unwrap();
        assert_eq!((bm.width, bm.height), (2, 2));
        assert_eq!(bm.to_text('1', '0'), "10\n11\n");
        assert!(!bm.get(1, 1));
        assert_eq!(pbm(&bm), "P1\n2 2\n1 0\n1 1\n");
    }

    #[test]
    fn unit_square_pbm() {
        let bm = rasterize(&prefractal(2, 0, 0)).unwrap();
        assert_eq!(bm.to_text('1', '0'), "1\n");
        assert_eq!(pbm(&bm), "P1\n1 1\n1\n");
    }

    #[test]
    fn hexagon_first_step() {
        let bm = rasterize(&prefractal(3, 1, 1)).unwrap();
        assert_eq!((bm.width, bm.height), (3, 3));
        assert_eq!(bm.origin, (-1, -1));
        assert_eq!(bm.count_set(), 7);
        assert_eq!(bm.to_text('1', '0'), "110\n111\n011\n");
        let text = pbm(&bm);
        assert_eq!(text.matches('1').count() - 1, 7); // minus the magic number
    }

    #[test]
    fn empty_rejected() {
        let p = Prefractal::from_squares(DigitSystem::new(2, 0).unwrap(), 0, vec![]).unwrap();
        assert_eq!(rasterize(&p), Err(Error::EmptyPrefractal));
        assert_eq!(write_svg(&p, &mut Vec::new()), Err(Error::EmptyPrefractal));
    }

    #[test]
    fn svg_rects() {
        let text = svg(&prefractal(2, 0, 0));
        assert_eq!(text.matches("<rect").count(), 1);
        assert!(text.contains(r#"<rect x="0" y="-1" width="1" height="1" fill="black"/>"#));
        assert!(text.contains(r#"viewBox="0 -1 1 1""#));
        assert_eq!(svg(&prefractal(2, 0, 2)).matches("<rect").count(), 9);
        let hex = svg(&prefractal(3, 1, 2));
        assert_eq!(hex.matches("<rect").count(), 49);
        assert!(hex.contains(r#"<rect x="-4""#));
        assert!(hex.contains(r#"viewBox="-4 -5 9 9""#));
        assert_eq!(hex, svg(&prefractal(3, 1, 2)));
    }
}
