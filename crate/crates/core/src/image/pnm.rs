//! Netpbm readers and writer: ASCII PGM (P2), binary PGM (P5), binary
//! PPM (P6). Only 8-bit rasters (max value 255) are accepted, which keeps
//! every byte of every fixture platform-independent.
//!
//! Color pixels are reduced to luma with the broadcast weights
//! `0.299 R + 0.587 G + 0.114 B`.

use crate::error::{Error, Result};
use crate::image::GrayImage;

const LUMA_R: f64 = 0.299;
const LUMA_G: f64 = 0.587;
const LUMA_B: f64 = 0.114;

// Header scanner: tracks the byte offset so diagnostics can point at the
// exact spot. '#' starts a comment running to end of line.
struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(bytes: &'a [u8], pos: usize) -> Self {
        Scanner { bytes, pos }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next_uint(&mut self, what: &str) -> Result<(usize, u64)> {
        self.skip_space_and_comments();
        let start = self.pos;
        if start >= self.bytes.len() {
            return Err(Error::MalformedHeader {
                offset: start,
                reason: format!("unexpected end of file while reading {what}"),
            });
        }
        let mut value: u64 = 0;
        let mut digits = 0usize;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.bytes[self.pos] - b'0') as u64))
                .ok_or(Error::MalformedHeader {
                    offset: start,
                    reason: format!("{what} overflows"),
                })?;
            self.pos += 1;
            digits += 1;
        }
        if digits == 0 {
            return Err(Error::MalformedHeader {
                offset: start,
                reason: format!(
                    "expected a decimal {what}, found byte 0x{:02x}",
                    self.bytes[start]
                ),
            });
        }
        Ok((start, value))
    }
}

// Whole-image pixel budget; headers promising more than this are junk.
const MAX_PIXELS: u64 = 1 << 28;

/// Decodes a PGM (P2/P5) or PPM (P6) file with max value 255 into a
/// [`GrayImage`] with intensities in `[0, 255]`.
pub fn load_image(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 {
        return Err(Error::MalformedHeader {
            offset: 0,
            reason: "file too short for a magic number".into(),
        });
    }
    let magic = &bytes[..2];
    if !matches!(magic, b"P2" | b"P5" | b"P6") {
        return Err(Error::MalformedHeader {
            offset: 0,
            reason: format!(
                "unrecognized magic {:?} (supported: P2, P5, P6)",
                String::from_utf8_lossy(magic)
            ),
        });
    }

    let mut scan = Scanner::new(bytes, 2);
    let (w_off, width) = scan.next_uint("width")?;
    let (_, height) = scan.next_uint("height")?;
    let (max_off, max_value) = scan.next_uint("max value")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader {
            offset: w_off,
            reason: format!("dimensions {width}x{height} must be positive"),
        });
    }
    if width.saturating_mul(height) > MAX_PIXELS {
        return Err(Error::MalformedHeader {
            offset: w_off,
            reason: format!("{width}x{height} exceeds the {MAX_PIXELS}-pixel budget"),
        });
    }
    if max_value != 255 {
        return Err(Error::UnsupportedMaxValue {
            offset: max_off,
            max_value,
        });
    }
    let pixel_count = (width * height) as usize;
    let (width, height) = (width as usize, height as usize);

    match magic {
        b"P2" => {
            let mut pixels = Vec::with_capacity(pixel_count);
            for _ in 0..pixel_count {
                scan.skip_space_and_comments();
                if scan.pos >= bytes.len() {
                    return Err(Error::TruncatedPayload {
                        offset: bytes.len(),
                        detail: format!(
                            "got {} of {pixel_count} ASCII samples",
                            pixels.len()
                        ),
                    });
                }
                let (off, v) = scan.next_uint("sample").map_err(|e| match e {
                    Error::MalformedHeader { offset, reason } => {
                        Error::MalformedPayload { offset, reason }
                    }
                    other => other,
                })?;
                if v > 255 {
                    return Err(Error::MalformedPayload {
                        offset: off,
                        reason: format!("sample {v} exceeds max value 255"),
                    });
                }
                pixels.push(v as f64);
            }
            GrayImage::new(width, height, pixels)
        }
        b"P5" | b"P6" => {
            // Exactly one whitespace byte separates the header from the
            // binary payload.
            if scan.pos >= bytes.len() || !bytes[scan.pos].is_ascii_whitespace() {
                return Err(Error::MalformedHeader {
                    offset: scan.pos,
                    reason: "expected a single whitespace byte after the max value".into(),
                });
            }
            let start = scan.pos + 1;
            let channels = if magic == b"P6" { 3 } else { 1 };
            let need = pixel_count * channels;
            let available = bytes.len().saturating_sub(start);
            if available < need {
                return Err(Error::TruncatedPayload {
                    offset: bytes.len(),
                    detail: format!("payload holds {available} of {need} bytes"),
                });
            }
            let payload = &bytes[start..start + need];
            let pixels = if magic == b"P5" {
                payload.iter().map(|&b| b as f64).collect()
            } else {
                payload
                    .chunks_exact(3)
                    .map(|rgb| {
                        LUMA_R * rgb[0] as f64 + LUMA_G * rgb[1] as f64 + LUMA_B * rgb[2] as f64
                    })
                    .collect()
            };
            GrayImage::new(width, height, pixels)
        }
        _ => unreachable!(),
    }
}

/// Encodes a binary P5 file. Intensities must already be within
/// `[0, 255]`; they are rounded to the nearest integer, ties away from
/// zero.
pub fn save_pgm(image: &GrayImage) -> Result<Vec<u8>> {
    for (index, &value) in image.pixels().iter().enumerate() {
        if !(0.0..=255.0).contains(&value) {
            return Err(Error::OutOfRangeIntensity { index, value });
        }
    }
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend(image.pixels().iter().map(|v| v.round() as u8));
    Ok(out)
}
