use std::io::Write;

use super::{CosineReport, PairSumReport, SumReport};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    pub fn sep(self) -> &'static str {
        match self {
            Format::Csv => ",",
            Format::Tsv => "\t",
        }
    }
}

fn row<W: Write>(w: &mut W, fmt: Format, cells: &[String]) -> Result<()> {
    writeln!(w, "{}", cells.join(fmt.sep())).map_err(|e| Error::io("<output>", e))
}

fn head<W: Write>(w: &mut W, fmt: Format, cols: &[&str]) -> Result<()> {
    writeln!(w, "{}", cols.join(fmt.sep())).map_err(|e| Error::io("<output>", e))
}

/// `N,parity,S,E,norm_new,norm_old,method,wall_s`, with `norm_ivic` after
/// `norm_old` when `ivic` is set.
pub fn write_sum_csv<W: Write>(mut w: W, reports: &[SumReport], fmt: Format, ivic: bool) -> Result<()> {
    let mut cols = vec!["N", "parity", "S", "E", "norm_new", "norm_old"];
    if ivic {
        cols.push("norm_ivic");
    }
    cols.extend(["method", "wall_s"]);
    head(&mut w, fmt, &cols)?;
    for r in reports {
        let mut cells = vec![
            r.n.to_string(),
            r.parity.tag().to_string(),
            r.s.to_string(),
            r.e.to_string(),
            r.norm_new.to_string(),
            r.norm_old.to_string(),
        ];
        if ivic {
            cells.push(r.norm_ivic.to_string());
        }
        cells.push(r.method.tag().to_string());
        cells.push(format!("{:.3}", r.wall_s));
        row(&mut w, fmt, &cells)?;
    }
    Ok(())
}

/// `N,P,target,rel_dev,moser,method,wall_s`
pub fn write_pair_csv<W: Write>(mut w: W, reports: &[PairSumReport], fmt: Format) -> Result<()> {
    head(&mut w, fmt, &["N", "P", "target", "rel_dev", "moser", "method", "wall_s"])?;
    for r in reports {
        row(
            &mut w,
            fmt,
            &[
                r.n.to_string(),
                r.p.to_string(),
                r.target.to_string(),
                r.rel_dev.to_string(),
                r.moser.to_string(),
                r.method.tag().to_string(),
                format!("{:.3}", r.wall_s),
            ],
        )?;
    }
    Ok(())
}

/// `N,T,E,norm,wall_s`
pub fn write_cosine_csv<W: Write>(mut w: W, reports: &[CosineReport], fmt: Format) -> Result<()> {
    head(&mut w, fmt, &["N", "T", "E", "norm", "wall_s"])?;
    for r in reports {
        row(
            &mut w,
            fmt,
            &[
                r.n.to_string(),
                r.t.to_string(),
                r.e.to_string(),
                r.norm.to_string(),
                format!("{:.3}", r.wall_s),
            ],
        )?;
    }
    Ok(())
}
