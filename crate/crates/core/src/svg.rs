//! SVG scatter rendering of point sets and witness overlays.
//!
//! The one lossy output in the engine: positions are decimal expansions of
//! the exact rationals, truncated to [`SVG_COORD_DIGITS`] significant digits
//! and documented as such in the emitted file. Set members draw as filled
//! circles, overlay points (witness images) as larger hollow circles with a
//! coordinate label. Geometry is mapped with a fixed scale factor and a
//! flipped y axis so the picture reads in the usual mathematical
//! orientation.

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::rational::Rational;

/// Pixels per coordinate unit.
pub const SVG_SCALE: i64 = 4;
/// Padding around the bounding box, in pixels.
pub const SVG_MARGIN: i64 = 20;
/// Significant digits kept when rendering a coordinate.
pub const SVG_COORD_DIGITS: usize = 20;

const FILLED_RADIUS: &str = "3";
const HOLLOW_RADIUS: &str = "5.5";

struct Frame {
    min_x: Rational,
    max_y: Rational,
    scale: Rational,
    margin: Rational,
}

impl Frame {
    fn map(&self, p: &Point) -> (String, String) {
        let sx = &(&(&p.x - &self.min_x) * &self.scale) + &self.margin;
        let sy = &(&(&self.max_y - &p.y) * &self.scale) + &self.margin;
        (
            sx.to_decimal(SVG_COORD_DIGITS),
            sy.to_decimal(SVG_COORD_DIGITS),
        )
    }
}

/// Render `set` as filled markers with `hollow` drawn on top as hollow
/// markers. The set must be nonempty; the overlay may be empty.
pub fn render_svg(set: &PointSet, hollow: &PointSet) -> Result<String> {
    if set.is_empty() {
        return Err(Error::precondition("rendering needs a nonempty set"));
    }
    let mut min_x = None;
    let mut max_x = None;
    let mut min_y = None;
    let mut max_y = None;
    for p in set.iter().chain(hollow.iter()) {
        let keep_min = |slot: &mut Option<Rational>, v: &Rational| match slot {
            Some(cur) if &*cur <= v => {}
            _ => *slot = Some(v.clone()),
        };
        let keep_max = |slot: &mut Option<Rational>, v: &Rational| match slot {
            Some(cur) if &*cur >= v => {}
            _ => *slot = Some(v.clone()),
        };
        keep_min(&mut min_x, &p.x);
        keep_max(&mut max_x, &p.x);
        keep_min(&mut min_y, &p.y);
        keep_max(&mut max_y, &p.y);
    }
    let (min_x, max_x) = (min_x.unwrap(), max_x.unwrap());
    let (min_y, max_y) = (min_y.unwrap(), max_y.unwrap());

    let scale = Rational::from_int(SVG_SCALE);
    let margin = Rational::from_int(SVG_MARGIN);
    let two_margins = &margin + &margin;
    let width = &(&(&max_x - &min_x) * &scale) + &two_margins;
    let height = &(&(&max_y - &min_y) * &scale) + &two_margins;
    let frame = Frame {
        min_x,
        max_y,
        scale,
        margin,
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n",
        w = width.to_decimal(SVG_COORD_DIGITS),
        h = height.to_decimal(SVG_COORD_DIGITS),
    ));
    out.push_str(&format!(
        "<!-- positions are decimal expansions of exact rationals, truncated \
         to {SVG_COORD_DIGITS} significant digits -->\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for p in set {
        let (x, y) = frame.map(p);
        out.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"{FILLED_RADIUS}\" fill=\"black\"/>\n"
        ));
    }
    for p in hollow {
        let (x, y) = frame.map(p);
        out.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"{HOLLOW_RADIUS}\" fill=\"none\" \
             stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" dx=\"7\" dy=\"-7\" font-family=\"monospace\" \
             font-size=\"10\">{p}</text>\n"
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
