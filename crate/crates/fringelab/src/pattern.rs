//! CSV emission for single-parameter intensity sweeps.

use std::io::{self, Write};

use fringe_core::engine::IntensityPattern;

/// `theta,intensity` rows, both columns with 12 significant digits.
pub fn write_csv(p: &IntensityPattern, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "theta,intensity")?;
    for (t, i) in p.thetas.iter().zip(p.intensities.iter()) {
        writeln!(out, "{t:.11e},{i:.11e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario;
    use fringe_core::engine;
    use std::f64::consts::PI;

    #[test]
    fn header_and_row_format() {
        let p = engine::sweep(&scenario::dark(), 4).unwrap();
        let mut buf = Vec::new();
        write_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theta,intensity"));
        assert_eq!(lines.next(), Some("0.00000000000e0,1.00000000000e0"));
        assert_eq!(lines.clone().count(), 3);
    }

    #[test]
    fn piflip_row_at_third_pi() {
        // Grid 360 lands exactly on pi/3 at row 60.
        let p = engine::sweep(&scenario::piflip4(), 360).unwrap();
        let mut buf = Vec::new();
        write_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(61).unwrap();
        let mut cols = row.split(',');
        let theta: f64 = cols.next().unwrap().parse().unwrap();
        let intensity: f64 = cols.next().unwrap().parse().unwrap();
        assert!((theta - PI / 3.0).abs() < 1e-9);
        assert!((intensity - 1.75).abs() < 1e-9);
    }
}
