//! CSV writers. Every field is numeric or a short code, so no quoting is
//! needed; every file starts with a header row.

use std::io::{self, Write};

use crate::arith::OddNumber;
use crate::automaton::{CellState, RowReport};
use crate::hydra::CutRecord;
use crate::metrics::{LogFit, RateReport, SeriesPoint};

pub fn write_row_reports<W: Write + ?Sized>(w: &mut W, reports: &[RowReport]) -> io::Result<()> {
    writeln!(w, "row,completion_tick,expense")?;
    for r in reports {
        writeln!(w, "{},{},{}", r.row, r.completion_tick, r.expense)?;
    }
    Ok(())
}

pub fn write_snapshot_header<W: Write + ?Sized>(w: &mut W) -> io::Result<()> {
    writeln!(w, "tick,cell,state")
}

pub fn write_snapshot<W: Write + ?Sized>(
    w: &mut W,
    tick: u64,
    cells: &[(OddNumber, CellState)],
) -> io::Result<()> {
    for (x, st) in cells {
        writeln!(w, "{tick},{x},{}", st.code())?;
    }
    Ok(())
}

pub fn write_rates<W: Write + ?Sized>(w: &mut W, reports: &[RateReport]) -> io::Result<()> {
    writeln!(w, "class,sample_count,mean_rate")?;
    for r in reports {
        writeln!(w, "{},{},{:.6}", r.class, r.sample_count, r.mean_f64())?;
    }
    Ok(())
}

pub fn write_series<W: Write + ?Sized>(w: &mut W, points: &[SeriesPoint]) -> io::Result<()> {
    writeln!(w, "n,partial_sum")?;
    for p in points {
        writeln!(w, "{},{:.12}", p.n, p.to_f64())?;
    }
    Ok(())
}

pub fn write_fit<W: Write + ?Sized>(w: &mut W, fit: &LogFit) -> io::Result<()> {
    writeln!(w, "row,log_expense,fit_residual")?;
    for (row, y, res) in &fit.points {
        writeln!(w, "{row},{y:.9},{res:.9}")?;
    }
    Ok(())
}

pub fn write_hydra_trace<W: Write + ?Sized>(w: &mut W, trace: &[CutRecord]) -> io::Result<()> {
    writeln!(w, "step,head_id,was_short,regrowth_n,node_count")?;
    for c in trace {
        writeln!(
            w,
            "{},{},{},{},{}",
            c.step, c.head, c.was_short, c.regrowth, c.node_count
        )?;
    }
    Ok(())
}
