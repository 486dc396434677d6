//! Binary PGM heatmaps of CSV fields.

use clap::ValueEnum;

use crate::error::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Channel {
    Re,
    Im,
    JRe,
    JIm,
    Abs,
}

impl Channel {
    fn column(self) -> &'static str {
        match self {
            Channel::Re | Channel::Abs => "re",
            Channel::Im => "im",
            Channel::JRe => "j_re",
            Channel::JIm => "j_im",
        }
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure::new("malformed-csv", msg)
}

/// Row-major values of one channel and the grid width.
pub fn read_channel(csv: &str, channel: Channel) -> Result<(Vec<f64>, usize), Failure> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| malformed("empty file"))?.split(',').collect();
    if header.len() < 4 || header[0] != "x" || header[1] != "y" {
        return Err(malformed("header must start with x,y"));
    }
    let col =
        |name: &str| header.iter().position(|h| *h == name).ok_or_else(|| malformed(format!("no `{name}` column")));
    let main = col(channel.column())?;
    let abs_cols: Vec<usize> =
        if channel == Channel::Abs { header.iter().enumerate().skip(2).map(|(i, _)| i).collect() } else { vec![main] };

    let mut values = Vec::new();
    let mut first_y = None;
    let mut width = 0;
    for (ln, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(malformed(format!("line {}: expected {} cells", ln + 2, header.len())));
        }
        let num = |i: usize| {
            cells[i].trim().parse::<f64>().map_err(|_| malformed(format!("line {}: bad number `{}`", ln + 2, cells[i])))
        };
        let y = num(1)?;
        match first_y {
            None => first_y = Some(y),
            Some(y0) if y0 == y => {}
            Some(_) if width == 0 => width = values.len(),
            _ => {}
        }
        let v = if channel == Channel::Abs {
            abs_cols.iter().map(|&i| num(i).map(|x| x * x)).sum::<Result<f64, _>>()?.sqrt()
        } else {
            num(main)?
        };
        values.push(v);
    }
    if values.is_empty() {
        return Err(malformed("no data rows"));
    }
    if width == 0 {
        width = values.len();
    }
    if values.len() % width != 0 {
        return Err(malformed("rows do not form a rectangular grid"));
    }
    Ok((values, width))
}

/// Min–max normalised 8-bit graymap; NaN cells are 0 and a constant field is mid-gray.
pub fn pgm(values: &[f64], width: usize) -> Vec<u8> {
    let height = values.len() / width;
    let (lo, hi) = values
        .iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(values.iter().map(|&v| {
        if !v.is_finite() {
            0
        } else if hi > lo {
            ((v - lo) / (hi - lo) * 255.0).round() as u8
        } else {
            128
        }
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "x,y,re,im\n-0.5,0.5,1,0\n0.5,0.5,3,4\n-0.5,-0.5,NaN,NaN\n0.5,-0.5,2,0\n";

    #[test]
    fn reads_grid() {
        let (v, w) = read_channel(CSV, Channel::Re).unwrap();
        assert_eq!(w, 2);
        assert_eq!(v[1], 3.0);
        let (a, _) = read_channel(CSV, Channel::Abs).unwrap();
        assert_eq!(a[1], 5.0);
        assert!(read_channel(CSV, Channel::JRe).is_err());
    }

    #[test]
    fn image_bytes() {
        let (v, w) = read_channel(CSV, Channel::Re).unwrap();
        let img = pgm(&v, w);
        assert!(img.starts_with(b"P5\n2 2\n255\n"));
        assert_eq!(&img[img.len() - 4..], &[0, 255, 0, 128]);
        assert!(pgm(&[2.0, 2.0], 2).ends_with(&[128, 128]));
    }

    #[test]
    fn malformed_inputs() {
        assert!(read_channel("", Channel::Re).is_err());
        assert!(read_channel("x,y,re,im\n1,2,3\n", Channel::Re).is_err());
        assert!(read_channel("x,y,re,im\n1,2,a,0\n", Channel::Re).is_err());
        assert!(read_channel("a,b,c,d\n", Channel::Re).is_err());
    }
}
