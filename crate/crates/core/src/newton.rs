//! Newton polygons of p-divisible groups up to isogeny.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::arith::{gcd_u64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("height must be positive")]
    ZeroHeight,
    #[error("dimension {d} exceeds height {h}")]
    DimensionExceedsHeight { d: u64, h: u64 },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

/// `mult` copies of the simple isogeny class of dimension `d` and height `h`, `gcd(d, h) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub d: u64,
    pub h: u64,
    pub mult: u64,
}

impl Segment {
    pub fn slope(&self) -> Rat {
        Rat::new(self.d, self.h).expect("positive height")
    }

    fn cmp_slope(&self, o: &Segment) -> Ordering {
        (self.d * o.h).cmp(&(o.d * self.h))
    }
}

#[derive(Debug, Clone, Default)]
pub struct NewtonPolygon {
    segments: Vec<Segment>,
    notes: Vec<String>,
}

impl PartialEq for NewtonPolygon {
    fn eq(&self, o: &Self) -> bool {
        self.segments == o.segments
    }
}

impl Eq for NewtonPolygon {}

impl NewtonPolygon {
    pub fn empty() -> Self {
        NewtonPolygon::default()
    }

    /// Canonical polygon from `(d, h, mult)` triples. A non-coprime pair `(d, h)` is read as
    /// `gcd(d, h)` copies of the reduced pair, recorded in [`NewtonPolygon::notes`].
    pub fn from_slopes(pairs: &[(u64, u64, u64)]) -> Result<Self, NewtonError> {
        let mut segs = Vec::new();
        let mut notes = Vec::new();
        for &(d, h, mult) in pairs {
            if h == 0 {
                return Err(NewtonError::ZeroHeight);
            }
            if d > h {
                return Err(NewtonError::DimensionExceedsHeight { d, h });
            }
            if mult == 0 {
                return Err(NewtonError::ZeroMultiplicity);
            }
            let g = gcd_u64(d, h);
            if g > 1 {
                notes.push(format!(
                    "({d},{h}) is not coprime; read as {} copies of ({},{})",
                    g * mult,
                    d / g,
                    h / g
                ));
            }
            segs.push(Segment { d: d / g, h: h / g, mult: mult * g });
        }
        let mut p = Self::canonical(segs);
        p.notes = notes;
        Ok(p)
    }

    fn canonical(mut segs: Vec<Segment>) -> Self {
        segs.sort_by(|a, b| a.cmp_slope(b));
        let mut out: Vec<Segment> = Vec::new();
        for s in segs {
            match out.last_mut() {
                Some(last) if last.d == s.d && last.h == s.h => last.mult += s.mult,
                _ => out.push(s),
            }
        }
        NewtonPolygon { segments: out, notes: Vec::new() }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Normalisation remarks attached during construction.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `(height, dimension)`.
    pub fn total(&self) -> (u64, u64) {
        self.segments
            .iter()
            .fold((0, 0), |(h, d), s| (h + s.h * s.mult, d + s.d * s.mult))
    }

    /// Cartier dual: `(d, h) -> (h - d, h)`.
    pub fn dual(&self) -> Self {
        Self::canonical(
            self.segments.iter().map(|s| Segment { d: s.h - s.d, h: s.h, mult: s.mult }).collect(),
        )
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&o.segments);
        Self::canonical(segs)
    }

    /// Slopes `lambda` and `1 - lambda` occur with equal multiplicity.
    pub fn is_polarizable(&self) -> bool {
        *self == self.dual()
    }

    /// Vertices `(total height, total dimension)` in order of increasing slope.
    pub fn breakpoints(&self) -> Vec<(u64, u64)> {
        let mut pts = alloc::vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for s in &self.segments {
            x += s.h * s.mult;
            y += s.d * s.mult;
            pts.push((x, y));
        }
        pts
    }

    /// Dotted grid with `o` at breakpoints and `*` at other lattice points on the polygon.
    pub fn render_ascii(&self) -> String {
        let bps = self.breakpoints();
        let (hgt, dim) = self.total();
        let mut out = String::new();
        out.push_str("breakpoints:");
        for (x, y) in &bps {
            out.push_str(&format!(" ({x},{y})"));
        }
        out.push('\n');
        let on_polygon = |x: u64, y: u64| -> bool {
            bps.windows(2).any(|w| {
                let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                x0 <= x && x <= x1 && (y - y0.min(y)) * (x1 - x0) == (y1 - y0) * (x - x0) && y >= y0
            })
        };
        for y in (0..=dim).rev() {
            out.push_str(&format!("{y:>3} "));
            for x in 0..=hgt {
                let c = if bps.contains(&(x, y)) {
                    'o'
                } else if on_polygon(x, y) {
                    '*'
                } else {
                    '.'
                };
                out.push(c);
                if x < hgt {
                    out.push(' ');
                }
            }
            out.push('\n');
        }
        out
    }
}
