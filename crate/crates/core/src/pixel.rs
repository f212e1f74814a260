//! Pixel sets in a finite window, connected-component labelling and plain PBM/PGM I/O.
//!
//! Foreground uses 8-connectivity and background 4-connectivity throughout.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use fixedbitset::FixedBitSet;
use image::codecs::pnm::{PnmDecoder, PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageDecoder, ImageEncoder};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Pixel = (i64, i64);

const N4: [Pixel; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const N8: [Pixel; 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    pub fn offsets(self) -> &'static [Pixel] {
        match self {
            Connectivity::Four => &N4,
            Connectivity::Eight => &N8,
        }
    }
}

/// A set of pixels inside a `width x height` window. Iteration is row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PixelSet {
    width: usize,
    height: usize,
    bits: FixedBitSet,
}

impl std::fmt::Debug for PixelSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PixelSet({}x{}, ", self.width, self.height)?;
        f.debug_list().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

impl PixelSet {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: FixedBitSet::with_capacity(width * height),
        }
    }

    pub fn from_pixels<I: IntoIterator<Item = Pixel>>(width: usize, height: usize, pixels: I) -> Result<Self> {
        let mut set = Self::new(width, height);
        for p in pixels {
            set.try_insert(p)?;
        }
        Ok(set)
    }

    /// Filled rectangle with inclusive corners, clipped to nothing: corners must lie in the window.
    pub fn rectangle(width: usize, height: usize, x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self> {
        let (x0, x1) = (x0.min(x1), x0.max(x1));
        let (y0, y1) = (y0.min(y1), y0.max(y1));
        let mut set = Self::new(width, height);
        for y in y0..=y1 {
            for x in x0..=x1 {
                set.try_insert((x, y))?;
            }
        }
        Ok(set)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn in_window(&self, (x, y): Pixel) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    fn offset(&self, (x, y): Pixel) -> usize {
        y as usize * self.width + x as usize
    }

    pub fn try_insert(&mut self, p: Pixel) -> Result<()> {
        if !self.in_window(p) {
            return Err(Error::OutOfWindow {
                x: p.0,
                y: p.1,
                width: self.width,
                height: self.height,
            });
        }
        let o = self.offset(p);
        self.bits.insert(o);
        Ok(())
    }

    pub fn remove(&mut self, p: Pixel) {
        if self.in_window(p) {
            let o = self.offset(p);
            self.bits.set(o, false);
        }
    }

    /// Pixels outside the window are never members.
    pub fn contains(&self, p: Pixel) -> bool {
        self.in_window(p) && self.bits.contains(self.offset(p))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Pixel> + '_ {
        let w = self.width;
        self.bits.ones().map(move |o| ((o % w) as i64, (o / w) as i64))
    }

    fn same_window(&self, other: &Self) {
        assert!(
            self.width == other.width && self.height == other.height,
            "pixel sets from different windows"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_window(other);
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_window(other);
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.same_window(other);
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.same_window(other);
        !self.bits.is_disjoint(&other.bits)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn full(width: usize, height: usize) -> Self {
        Self::new(width, height).complement()
    }

    pub fn is_on_border(&self, (x, y): Pixel) -> bool {
        x == 0 || y == 0 || x as usize == self.width - 1 || y as usize == self.height - 1
    }

    /// True when some neighbour (under `conn`) is a member. Out-of-window
    /// neighbours count only when `outside_counts` is set.
    pub fn touches(&self, p: Pixel, conn: Connectivity) -> bool {
        conn.offsets()
            .iter()
            .any(|&(dx, dy)| self.contains((p.0 + dx, p.1 + dy)))
    }

    /// Inclusive bounding box `(x0, y0, x1, y1)`.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.iter();
        let first = it.next()?;
        Some(it.fold((first.0, first.1, first.0, first.1), |(x0, y0, x1, y1), (x, y)| {
            (x0.min(x), y0.min(y), x1.max(x), y1.max(y))
        }))
    }

    pub fn is_filled_rectangle(&self) -> bool {
        match self.bounding_box() {
            None => false,
            Some((x0, y0, x1, y1)) => self.len() as i64 == (x1 - x0 + 1) * (y1 - y0 + 1),
        }
    }

    /// Connected components under `conn`, each as its own set, ordered by first pixel.
    pub fn components(&self, conn: Connectivity) -> Vec<PixelSet> {
        let mut seen = FixedBitSet::with_capacity(self.width * self.height);
        let mut out = Vec::new();
        for start in self.iter() {
            let so = self.offset(start);
            if seen.contains(so) {
                continue;
            }
            seen.insert(so);
            let mut comp = PixelSet::new(self.width, self.height);
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                comp.bits.insert(self.offset(p));
                for &(dx, dy) in conn.offsets() {
                    let q = (p.0 + dx, p.1 + dy);
                    if self.contains(q) && !seen.contains(self.offset(q)) {
                        seen.insert(self.offset(q));
                        queue.push_back(q);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn touches_border(&self) -> bool {
        self.iter().any(|p| self.is_on_border(p))
    }

    /// Reads a plain or raw PBM/PGM image. PBM ink (1) and PGM values below
    /// half of the maximum are foreground.
    pub fn read_pnm<R: BufRead>(reader: R) -> Result<Self> {
        let decoder = PnmDecoder::new(reader).map_err(|e| Error::Image(e.to_string()))?;
        let (w, h) = decoder.dimensions();
        let is_bitmap = matches!(decoder.subtype(), PnmSubtype::Bitmap(_));
        let mut buf = vec![0u8; decoder.total_bytes() as usize];
        let color = decoder.color_type();
        decoder
            .read_image(&mut buf)
            .map_err(|e| Error::Image(e.to_string()))?;
        let channels = color.channel_count() as usize;
        if color.bytes_per_pixel() as usize != channels {
            return Err(Error::Image("only 8-bit samples are supported".into()));
        }
        let (w, h) = (w as usize, h as usize);
        let mut set = Self::new(w, h);
        for (o, px) in buf.chunks(channels).enumerate() {
            // The decoder expands bitmaps to 0 (ink) / 255 (blank).
            let fg = if is_bitmap { px[0] == 0 } else { px[0] < 128 };
            if fg {
                set.bits.insert(o);
            }
        }
        Ok(set)
    }

    /// Writes a plain (ASCII) PBM.
    pub fn write_pbm<W: Write>(&self, writer: W) -> Result<()> {
        let data: Vec<u8> = (0..self.width * self.height)
            .map(|o| u8::from(self.bits.contains(o)))
            .collect();
        PnmEncoder::new(writer)
            .with_subtype(PnmSubtype::Bitmap(SampleEncoding::Ascii))
            .write_image(&data, self.width as u32, self.height as u32, ExtendedColorType::L8)
            .map_err(|e| Error::Image(e.to_string()))
    }
}

/// JSON form: `{width, height, pixels: [[x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PixelSetDoc {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[i64; 2]>,
}

impl From<&PixelSet> for PixelSetDoc {
    fn from(s: &PixelSet) -> Self {
        Self {
            width: s.width,
            height: s.height,
            pixels: s.iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl TryFrom<&PixelSetDoc> for PixelSet {
    type Error = Error;

    fn try_from(d: &PixelSetDoc) -> Result<Self> {
        PixelSet::from_pixels(d.width, d.height, d.pixels.iter().map(|p| (p[0], p[1])))
    }
}
