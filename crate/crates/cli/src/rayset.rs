//! Plain-text ray-set format.
//!
//! ```text
//! d,p,rho,count
//! 100,2.66e-1,1.6666666666666666e-1,32372
//! 0:1.5046250000000053e-1;2:1.9424999999999906e-1;40:6.5528750000000036e-1
//! ...
//! ```
//!
//! The second line holds the class (`rho` empty for mean-only classes) and
//! the number of rays; every further line is one ray as `index:mass` atoms
//! in increasing index order. Masses carry 17 significant digits, so `f64`
//! values survive a round trip unchanged.

use std::fmt::Write as _;

use exrays_core::{Class, Ray};

use crate::error::{CliError, Result};

pub const HEADER: &str = "d,p,rho,count";

pub fn write_ray_set(spec: &Class, rays: &[Ray]) -> String {
    let mut out = String::with_capacity(64 * (rays.len() + 2));
    out.push_str(HEADER);
    out.push('\n');
    let rho = spec.rho().map(|r| format!("{r:e}")).unwrap_or_default();
    writeln!(out, "{},{:e},{},{}", spec.d(), spec.p(), rho, rays.len()).unwrap();
    for ray in rays {
        for (i, (j, m)) in ray.atoms().enumerate() {
            if i > 0 {
                out.push(';');
            }
            write!(out, "{j}:{m:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn bad(detail: impl Into<String>) -> CliError {
    CliError::Format {
        what: "ray set",
        detail: detail.into(),
    }
}

/// Parses a ray set and checks that it belongs to `spec`: the header must
/// name the same class bit for bit, and every ray must pass the class
/// constraints.
pub fn read_ray_set(spec: &Class, text: &str) -> Result<Vec<Ray>> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad("missing header line"));
    }
    let meta = lines.next().ok_or_else(|| bad("missing class line"))?;
    let fields: Vec<&str> = meta.split(',').collect();
    if fields.len() != 4 {
        return Err(bad(format!("class line {meta:?}")));
    }
    let d: usize = fields[0].parse().map_err(|_| bad("d"))?;
    let p: f64 = fields[1].parse().map_err(|_| bad("p"))?;
    let rho: Option<f64> = match fields[2] {
        "" => None,
        r => Some(r.parse().map_err(|_| bad("rho"))?),
    };
    let count: usize = fields[3].parse().map_err(|_| bad("count"))?;
    let same_rho = match (rho, spec.rho()) {
        (None, None) => true,
        (Some(a), Some(b)) => a.to_bits() == b.to_bits(),
        _ => false,
    };
    if d != spec.d() || p.to_bits() != spec.p().to_bits() || !same_rho {
        return Err(bad(format!("file is for class {meta:?}")));
    }

    let mut rays = Vec::with_capacity(count);
    for (n, line) in lines.enumerate() {
        let atoms = line
            .split(';')
            .map(|atom| {
                let (j, m) = atom
                    .split_once(':')
                    .ok_or_else(|| bad(format!("ray {n}: {atom:?}")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| bad(format!("ray {n}: index {j:?}")))?;
                let m: f64 = m.parse().map_err(|_| bad(format!("ray {n}: mass {m:?}")))?;
                Ok((j, m))
            })
            .collect::<Result<Vec<_>>>()?;
        rays.push(Ray::new(spec, &atoms)?);
    }
    if rays.len() != count {
        return Err(bad(format!(
            "header says {count} rays, found {}",
            rays.len()
        )));
    }
    Ok(rays)
}
