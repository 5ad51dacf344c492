//! Builds the SFCW radar scene: slab echo, four defects, noise. Writes the
//! components as CSV when given an output directory.

use std::path::PathBuf;

use lrpsr::linalg::numerical_rank;
use lrpsr::prelude::*;
use lrpsr::scene::{random_layer_coefficients, LayerStrength};

fn main() -> Result<()> {
    let cfg = RadarConfig::default();
    let scene = DefectScene::random(cfg.num_cells(), 4, 3)?;
    let coeffs = random_layer_coefficients(&cfg, LayerStrength::default(), scene.max_amplitude(), 3)?;
    let meas = synthesize(&cfg, &coeffs, &scene, 20.0, 3)?;
    let dict = build_dictionary(&cfg)?;

    println!("wavelength       {:.3} mm", cfg.wavelength() * 1e3);
    println!("dictionary       {} x {}, unit modulus: {}", dict.num_rows(), dict.num_cells(), dict.is_unit_modulus(1e-12));
    println!("slab echo rank   {}", numerical_rank(&meas.l, 1e-10));
    println!("defect cells     {:?}", scene.support());
    for (q, _) in scene.defects() {
        let (x, z) = cfg.cell_center(*q);
        println!("  cell {q:3}  cross-range {x:+.3} m  depth {z:.3} m");
    }
    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        meas.write_csv(&dir)?;
        println!("wrote L/D/Z/Y.csv to {}", dir.display());
    }
    Ok(())
}
