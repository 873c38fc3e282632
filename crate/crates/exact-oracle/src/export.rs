use std::io::Write;

use serde::Serialize;

use crate::Result;

/// One exported expectation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub m: usize,
    pub n: u32,
    pub half_side: i64,
    pub beta: f64,
    pub kappa: f64,
    pub observable: String,
    pub value: f64,
    pub states: u64,
    pub wall_seconds: f64,
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_row() {
        let row =
            ResultRow { m: 2, n: 2, half_side: 1, beta: 0.25, kappa: 0.5, observable: "wilson_unitary".into(), value: 0.125, states: 4096, wall_seconds: 0.0 };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "m,n,half_side,beta,kappa,observable,value,states,wall_seconds\n2,2,1,0.25,0.5,wilson_unitary,0.125,4096,0.0\n");
    }
}
