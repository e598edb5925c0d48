//! Data behind the comparison plots. Every ξ comparison is scaled by S so
//! both curves stay O(1) over the whole range.

use std::f64::consts::PI;

use clap::ValueEnum;
use xi_spectral::cusp::cusp_mesh;
use xi_spectral::riemann_siegel::rs_main_sum;

use crate::config::RunConfig;
use crate::output::{num, Table};
use crate::registry::{Bound, Function, Params};
use crate::{eval_grid, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// Sξ against c·S·K_{iω/2}(2π) on [0, 100].
    #[value(name = "xiK")]
    XiK,
    /// Sξ against c·S·W_{9/4,iω/2}(4π) on [0, 100].
    #[value(name = "xiW")]
    XiW,
    /// Sξ against Sξ* on [0, 100].
    #[value(name = "polyafake")]
    PolyaFake,
    /// Sξ against the Riemann–Siegel main sum on [2π, 100].
    #[value(name = "rs")]
    Rs,
    /// Sξ against c·S·Σ a_n W on [0, 100].
    #[value(name = "sumw")]
    SumW,
    /// Embedded cusp as an x y z point mesh.
    #[value(name = "cusp")]
    Cusp,
}

pub enum Figure {
    Csv(Table),
    Mesh { points: Vec<[f64; 3]>, comment: String },
}

impl FigureId {
    pub fn file_name(self) -> &'static str {
        match self {
            FigureId::XiK => "xiK.csv",
            FigureId::XiW => "xiW.csv",
            FigureId::PolyaFake => "polyafake.csv",
            FigureId::Rs => "rs.csv",
            FigureId::SumW => "sumw.csv",
            FigureId::Cusp => "cusp.xyz",
        }
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, CliError> {
    xi_spectral::Grid::range(lo, hi, step)
        .map(|g| g.points().to_vec())
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn bound(f: Function, cfg: &RunConfig) -> Result<Bound, CliError> {
    Bound::new(f, Params::default(), cfg).map_err(|e| CliError::numeric(None, e))
}

/// Sξ and S·g on the grid, with g multiplied by ξ(0)/g(0) when `matched`.
fn scaled_pair(g: Function, matched: bool, omegas: &[f64], cfg: &RunConfig, name: &str) -> Result<Table, CliError> {
    let s = eval_grid(&bound(Function::S, cfg)?, omegas)?;
    let xi = eval_grid(&bound(Function::Xi, cfg)?, omegas)?;
    let other = bound(g, cfg)?;
    let gv = eval_grid(&other, omegas)?;
    let c = if matched {
        let xi0 = bound(Function::Xi, cfg)?.eval(0.0).map_err(|e| CliError::numeric(Some(0.0), e))?;
        xi0 / other.eval(0.0).map_err(|e| CliError::numeric(Some(0.0), e))?
    } else {
        1.0
    };
    let mut t = Table::new(&["omega", "S_xi", name]);
    if matched {
        t.comment(format!("matching constant c = xi(0)/{}(0) = {}", other.value_name(), num(c)));
    }
    for i in 0..omegas.len() {
        t.row(vec![Some(omegas[i]), Some(s[i] * xi[i]), Some(c * s[i] * gv[i])]);
    }
    Ok(t)
}

pub fn build(id: FigureId, step: f64, cfg: &RunConfig) -> Result<Figure, CliError> {
    let full = || grid(0.0, 100.0, step);
    Ok(match id {
        FigureId::XiK => Figure::Csv(scaled_pair(Function::K, true, &full()?, cfg, "c_S_K")?),
        FigureId::XiW => Figure::Csv(scaled_pair(Function::W, true, &full()?, cfg, "c_S_W")?),
        FigureId::PolyaFake => Figure::Csv(scaled_pair(Function::PolyaFake, false, &full()?, cfg, "S_xi_star")?),
        FigureId::SumW => Figure::Csv(scaled_pair(Function::SumW, true, &full()?, cfg, "c_S_P")?),
        FigureId::Rs => {
            let omegas = grid(2.0 * PI, 100.0, step)?;
            let sxi = eval_grid(&bound(Function::SXi, cfg)?, &omegas)?;
            let mut t = Table::new(&["omega", "S_xi", "rs"]);
            for (w, v) in omegas.iter().zip(sxi) {
                t.row(vec![Some(*w), Some(v), Some(rs_main_sum(*w))]);
            }
            Figure::Csv(t)
        }
        FigureId::Cusp => {
            let c = &cfg.cusp;
            let points = cusp_mesh(c.mesh_nx, c.mesh_ny, c.mesh_y_max).map_err(|e| CliError::Usage(e.to_string()))?;
            let comment = format!(
                "cusp y >= 1/2pi embedded in R^3, {} x {} points, y_max = {}; x y z per line",
                c.mesh_nx,
                c.mesh_ny,
                num(c.mesh_y_max)
            );
            Figure::Mesh { points, comment }
        }
    })
}
