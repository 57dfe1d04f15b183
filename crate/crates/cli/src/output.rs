use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use hybridflow_core::experiment::{velocity_fields, Slice};
use hybridflow_core::{FluidState, Grid2D};

/// Fixed 17-significant-digit rendering used for every number we write.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

/// `x,y,rho,ux,uy` for every interior cell, x fastest.
pub fn write_field(path: &Path, state: &FluidState, grid: &Grid2D) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "x,y,rho,ux,uy")?;
    let (ux, uy) = velocity_fields(state, grid);
    for j in 0..grid.ny() as isize {
        let y = grid.y_center(j);
        for i in 0..grid.nx() as isize {
            writeln!(
                w,
                "{},{},{},{},{}",
                num(grid.x_center(i)),
                num(y),
                num(state.rho.get(i, j)),
                num(ux.get(i, j)),
                num(uy.get(i, j))
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_slice(path: &Path, slice: &Slice) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "# slice_x={}", num(slice.x))?;
    writeln!(w, "y,rho,ux,uy")?;
    for k in 0..slice.y.len() {
        writeln!(w, "{},{},{},{}", num(slice.y[k]), num(slice.rho[k]), num(slice.ux[k]), num(slice.uy[k]))?;
    }
    w.flush()?;
    Ok(())
}

/// One `rho_<m>,ux_<m>,uy_<m>` column group per model, sharing the `y` column.
pub fn write_combined_slices(path: &Path, slices: &[(&str, &Slice)]) -> Result<()> {
    let mut w = create(path)?;
    let Some((_, first)) = slices.first() else {
        return Ok(());
    };
    writeln!(w, "# slice_x={}", num(first.x))?;
    let mut header = vec!["y".to_string()];
    for (name, _) in slices {
        header.extend(["rho", "ux", "uy"].map(|q| format!("{q}_{name}")));
    }
    writeln!(w, "{}", header.join(","))?;
    for k in 0..first.y.len() {
        let mut row = vec![num(first.y[k])];
        for (_, s) in slices {
            row.extend([num(s.rho[k]), num(s.ux[k]), num(s.uy[k])]);
        }
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rows(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "{}", header.join(","))?;
    for r in rows {
        writeln!(w, "{}", r.join(","))?;
    }
    w.flush()?;
    Ok(())
}
