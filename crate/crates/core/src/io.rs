//! Output writers: CSV profiles for 1D runs, legacy VTK structured points
//! and raw little-endian binary with a JSON sidecar for 2D runs.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::euler::{cons_to_prim_1d, cons_to_prim_2d, GasModel};
use crate::solver::{Field1D, Field2D};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    GridText,
    GridBin,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "grid-text" => Ok(Self::GridText),
            "grid-bin" => Ok(Self::GridBin),
            other => Err(Error::InvalidConfig(format!("unknown format '{other}', expected csv|grid-text|grid-bin"))),
        }
    }
}

/// Named point-value arrays on a 1D grid.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputFrame1D {
    pub time: f64,
    pub x: Vec<f64>,
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

/// Named point-value arrays on a 2D grid, x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputFrame2D {
    pub time: f64,
    pub nx: usize,
    pub ny: usize,
    /// `[x0, x1, y0, y1]` of the domain; points sit at cell centres.
    pub bounds: [f64; 4],
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

fn check_finite(columns: &[Vec<f64>]) -> Result<()> {
    if columns.iter().flatten().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidConfig("frame contains non-finite values".into()))
    }
}

pub fn scalar_frame(field: &Field1D<1>, time: f64) -> OutputFrame1D {
    OutputFrame1D { time, x: field.grid.coordinates(), names: vec!["u".into()], columns: vec![field.component(0)] }
}

/// Density, velocity and pressure.
pub fn euler1d_frame(field: &Field1D<3>, gas: &GasModel, time: f64) -> Result<OutputFrame1D> {
    let mut columns = vec![Vec::with_capacity(field.n()); 3];
    for u in field.interior() {
        let w = cons_to_prim_1d(*u, gas)?;
        columns[0].push(w.rho);
        columns[1].push(w.u);
        columns[2].push(w.p);
    }
    Ok(OutputFrame1D {
        time,
        x: field.grid.coordinates(),
        names: ["rho", "u", "p"].map(String::from).to_vec(),
        columns,
    })
}

/// Density, velocities and pressure.
pub fn euler2d_frame(field: &Field2D<4>, gas: &GasModel, time: f64) -> Result<OutputFrame2D> {
    let g = field.grid;
    let mut columns = vec![Vec::with_capacity(g.nx * g.ny); 4];
    for j in 0..g.ny as isize {
        for i in 0..g.nx as isize {
            let w = cons_to_prim_2d(*field.at(i, j), gas)?;
            for (c, v) in columns.iter_mut().zip([w.rho, w.u, w.v, w.p]) {
                c.push(v);
            }
        }
    }
    Ok(OutputFrame2D {
        time,
        nx: g.nx,
        ny: g.ny,
        bounds: [g.x0, g.x1, g.y0, g.y1],
        names: ["rho", "u", "v", "p"].map(String::from).to_vec(),
        columns,
    })
}

/// `x,<names...>` with 17 significant digits per value.
pub fn write_frame_1d(frame: &OutputFrame1D, path: &Path) -> Result<()> {
    check_finite(&frame.columns)?;
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "x")?;
    for n in &frame.names {
        write!(w, ",{n}")?;
    }
    writeln!(w)?;
    for (i, x) in frame.x.iter().enumerate() {
        write!(w, "{x:.16e}")?;
        for c in &frame.columns {
            write!(w, ",{:.16e}", c[i])?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BinarySidecar {
    pub dims: [usize; 2],
    pub bounds: [f64; 4],
    pub variables: Vec<String>,
    pub time: f64,
    /// Storage order of the data file.
    pub layout: String,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn write_frame_2d(frame: &OutputFrame2D, path: &Path, format: OutputFormat) -> Result<()> {
    check_finite(&frame.columns)?;
    let [x0, x1, y0, y1] = frame.bounds;
    let dx = (x1 - x0) / frame.nx as f64;
    let dy = (y1 - y0) / frame.ny as f64;
    match format {
        OutputFormat::GridText | OutputFormat::Csv => {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "# vtk DataFile Version 3.0")?;
            writeln!(w, "weno t={:.16e}", frame.time)?;
            writeln!(w, "ASCII")?;
            writeln!(w, "DATASET STRUCTURED_POINTS")?;
            writeln!(w, "DIMENSIONS {} {} 1", frame.nx, frame.ny)?;
            writeln!(w, "ORIGIN {:.16e} {:.16e} 0", x0 + 0.5 * dx, y0 + 0.5 * dy)?;
            writeln!(w, "SPACING {dx:.16e} {dy:.16e} 1")?;
            writeln!(w, "POINT_DATA {}", frame.nx * frame.ny)?;
            for (name, c) in frame.names.iter().zip(&frame.columns) {
                writeln!(w, "SCALARS {name} double 1")?;
                writeln!(w, "LOOKUP_TABLE default")?;
                for v in c {
                    writeln!(w, "{v:.16e}")?;
                }
            }
            w.flush()?;
        }
        OutputFormat::GridBin => {
            let mut w = BufWriter::new(File::create(path)?);
            for v in frame.columns.iter().flatten() {
                w.write_all(&v.to_le_bytes())?;
            }
            w.flush()?;
            let meta = BinarySidecar {
                dims: [frame.nx, frame.ny],
                bounds: frame.bounds,
                variables: frame.names.clone(),
                time: frame.time,
                layout: "variable-major, x fastest, little-endian f64".into(),
            };
            std::fs::write(sidecar_path(path), serde_json::to_string_pretty(&meta)?)?;
        }
    }
    Ok(())
}

/// Reads a frame written with [`OutputFormat::GridBin`].
pub fn read_frame_2d_binary(path: &Path) -> Result<OutputFrame2D> {
    let meta: BinarySidecar = serde_json::from_str(&std::fs::read_to_string(sidecar_path(path))?)?;
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let n = meta.dims[0] * meta.dims[1];
    if bytes.len() != 8 * n * meta.variables.len() {
        return Err(Error::GridMismatch(format!("{} bytes for {} x {} values", bytes.len(), meta.variables.len(), n)));
    }
    let values: Vec<f64> = bytes.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().unwrap())).collect();
    Ok(OutputFrame2D {
        time: meta.time,
        nx: meta.dims[0],
        ny: meta.dims[1],
        bounds: meta.bounds,
        names: meta.variables,
        columns: values.chunks(n).map(|c| c.to_vec()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Grid1D, Grid2D};

    fn frame2d() -> OutputFrame2D {
        let gas = GasModel::air();
        let grid = Grid2D::new([0.0, 2.0, 0.0, 1.0], 12, 10).unwrap();
        let f = Field2D::from_fn(grid, |x, y| crate::euler::PrimState2D::new(1.0 + x, y, 0.1, 2.0).to_cons(&gas).to_array());
        euler2d_frame(&f, &gas, 0.5).unwrap()
    }

    #[test]
    fn binary_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.bin");
        let f = frame2d();
        write_frame_2d(&f, &p, OutputFormat::GridBin).unwrap();
        assert_eq!(read_frame_2d_binary(&p).unwrap(), f);
    }

    #[test]
    fn text_header_matches_arrays() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.vtk");
        write_frame_2d(&frame2d(), &p, OutputFormat::GridText).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.contains("DIMENSIONS 12 10 1"));
        assert!(text.contains("POINT_DATA 120"));
        assert_eq!(text.matches("SCALARS").count(), 4);
        assert_eq!(text.lines().count(), 8 + 4 * (2 + 120));
    }

    #[test]
    fn csv_rows_and_digits() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        let grid = Grid1D::new(0.0, 1.0, 25).unwrap();
        let f = Field1D::from_fn(grid, |x| [x / 3.0]);
        write_frame_1d(&scalar_frame(&f, 0.0), &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,u");
        assert_eq!(lines.len(), 26);
        let v: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, f.interior()[0][0]);
    }

    #[test]
    fn non_finite_frames_are_rejected() {
        let mut f = frame2d();
        f.columns[0][3] = f64::NAN;
        let dir = tempfile::tempdir().unwrap();
        assert!(write_frame_2d(&f, &dir.path().join("x"), OutputFormat::GridBin).is_err());
    }
}
