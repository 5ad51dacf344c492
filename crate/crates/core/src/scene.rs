//! SFCW MIMO radar scene synthesis.
//!
//! A linear array of `M` transceivers sits at depth `z = 0` looking at a
//! single-layered slab whose front face is at `z = standoff_distance`.
//! Each transceiver steps through `N` frequencies. The received data is
//! `Y = L + D + Z`, with `L` the slab reflections, `D` the defect echoes
//! and `Z` circular complex Gaussian noise.
//!
//! All vectorizations use the antenna-major layout of
//! [`crate::linalg::vec_antenna_major`]: row `m*N + n` of the dictionary
//! belongs to antenna `m` and frequency `n`.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{dim_check, Error, Result};
use crate::linalg::{frob_sq, unvec_antenna_major, CMatrix, CVector, ZERO};
use crate::random::{complex_normal, seeded_rng, standard_normal, unit_phasor, STREAM_NOISE, STREAM_TRUTH};

/// Geometry and frequency plan of the SFCW setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadarConfig {
    pub num_antennas: usize,
    pub num_freqs: usize,
    /// Hz
    pub carrier_freq: f64,
    /// Hz
    pub bandwidth: f64,
    /// Element spacing in metres; half the carrier wavelength when unset.
    pub antenna_spacing: Option<f64>,
    /// Distance from the array to the slab front face (m).
    pub standoff_distance: f64,
    /// m
    pub layer_thickness: f64,
    pub layer_rel_permittivity: f64,
    /// Number of internal reflections `G`; the slab contributes `G + 1` echoes.
    pub num_internal_reflections: usize,
    pub grid_rows: usize,
    pub grid_cols: usize,
    /// Imaged region as `[cross_range_width, depth]` in metres, centred on
    /// the array axis and starting at the slab front face. Unset means one
    /// Rayleigh resolution cell per grid cell, see [`RadarConfig::extent`].
    pub grid_extent: Option<[f64; 2]>,
    /// m/s
    pub propagation_speed: f64,
    /// Slow the in-slab part of the grid round trip down by `sqrt(eps_r)`.
    pub grid_in_material: bool,
}

impl Default for RadarConfig {
    fn default() -> Self {
        Self {
            num_antennas: 10,
            num_freqs: 20,
            carrier_freq: 300e9,
            bandwidth: 5e9,
            antenna_spacing: None,
            standoff_distance: 1.5,
            layer_thickness: 0.5,
            layer_rel_permittivity: 2.25,
            num_internal_reflections: 1,
            grid_rows: 16,
            grid_cols: 16,
            grid_extent: None,
            propagation_speed: 3e8,
            grid_in_material: false,
        }
    }
}

impl RadarConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.num_antennas == 0 || self.num_freqs == 0 {
            return bad("num_antennas and num_freqs must be at least 1");
        }
        if self.grid_rows == 0 || self.grid_cols == 0 {
            return bad("grid must have at least one cell");
        }
        if !(self.bandwidth > 0.0) {
            return bad("bandwidth must be positive");
        }
        if !(self.carrier_freq > self.bandwidth / 2.0) {
            return bad("carrier_freq must exceed bandwidth / 2");
        }
        if !(self.propagation_speed > 0.0) {
            return bad("propagation_speed must be positive");
        }
        if !(self.layer_rel_permittivity >= 1.0) {
            return bad("layer_rel_permittivity must be >= 1");
        }
        if !(self.layer_thickness >= 0.0 && self.standoff_distance >= 0.0) {
            return bad("layer_thickness and standoff_distance must be non-negative");
        }
        if let Some([w, d]) = self.grid_extent {
            if !(w > 0.0 && d > 0.0 && w.is_finite() && d.is_finite()) {
                return bad("grid_extent entries must be positive");
            }
        }
        if let Some(d) = self.antenna_spacing {
            if !(d > 0.0) {
                return bad("antenna_spacing must be positive");
            }
        }
        Ok(())
    }

    /// Rayleigh resolution `[lambda R / (2 M d), c / (2 B)]` at the slab
    /// front face: cross-range of the monostatic aperture and range.
    pub fn resolution(&self) -> [f64; 2] {
        let aperture = self.num_antennas as f64 * self.antenna_spacing();
        [
            self.wavelength() * self.standoff_distance / (2.0 * aperture),
            self.propagation_speed / (2.0 * self.bandwidth),
        ]
    }

    /// `grid_extent`, or the resolution cell times the grid size.
    pub fn extent(&self) -> [f64; 2] {
        self.grid_extent.unwrap_or_else(|| {
            let [dx, dz] = self.resolution();
            [dx * self.grid_cols as f64, dz * self.grid_rows as f64]
        })
    }

    pub fn num_cells(&self) -> usize {
        self.grid_rows * self.grid_cols
    }

    pub fn wavelength(&self) -> f64 {
        self.propagation_speed / self.carrier_freq
    }

    pub fn antenna_spacing(&self) -> f64 {
        self.antenna_spacing.unwrap_or(self.wavelength() / 2.0)
    }

    /// Cross-range position of each antenna; the array is centred on x = 0.
    pub fn antenna_positions(&self) -> Vec<f64> {
        let d = self.antenna_spacing();
        let mid = (self.num_antennas as f64 - 1.0) / 2.0;
        (0..self.num_antennas).map(|m| (m as f64 - mid) * d).collect()
    }

    /// `(x, z)` centre of grid cell `q = row * grid_cols + col`.
    pub fn cell_center(&self, q: usize) -> (f64, f64) {
        let (row, col) = (q / self.grid_cols, q % self.grid_cols);
        let [width, depth] = self.extent();
        let x = -width / 2.0 + (col as f64 + 0.5) * width / self.grid_cols as f64;
        let z = self.standoff_distance + (row as f64 + 0.5) * depth / self.grid_rows as f64;
        (x, z)
    }

    /// Round-trip delay from antenna `m` to grid cell `q`.
    pub fn grid_delay(&self, m: usize, q: usize) -> f64 {
        let xm = self.antenna_positions()[m];
        self.grid_delay_from(xm, q)
    }

    fn grid_delay_from(&self, xm: f64, q: usize) -> f64 {
        let (x, z) = self.cell_center(q);
        let dist = ((x - xm).powi(2) + z.powi(2)).sqrt();
        let path = if self.grid_in_material && z > self.standoff_distance {
            // straight ray; the fraction below the front face travels slower
            let inside = (z - self.standoff_distance) / z;
            dist * ((1.0 - inside) + inside * self.layer_rel_permittivity.sqrt())
        } else {
            dist
        };
        2.0 * path / self.propagation_speed
    }
}

/// Band-centre frequencies `f_n = fc - B/2 + (n - 1/2) B/N`, `n = 1..N`.
pub fn frequency_grid(config: &RadarConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let n = config.num_freqs as f64;
    let step = config.bandwidth / n;
    let start = config.carrier_freq - config.bandwidth / 2.0;
    Ok((0..config.num_freqs).map(|i| start + (i as f64 + 0.5) * step).collect())
}

/// Complex amplitudes and per-antenna delays of the `G + 1` slab echoes.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerCoefficients {
    pub alpha: Vec<Complex64>,
    /// `tau[m][g]`, seconds.
    pub tau: Vec<Vec<f64>>,
}

impl LayerCoefficients {
    pub fn new(alpha: Vec<Complex64>, tau: Vec<Vec<f64>>) -> Result<Self> {
        dim_check(tau.iter().all(|row| row.len() == alpha.len()), || {
            format!("every antenna needs {} delays", alpha.len())
        })?;
        Ok(Self { alpha, tau })
    }

    pub fn num_reflections(&self) -> usize {
        self.alpha.len()
    }
}

/// Broadside slab delays: echo `g` (0-based) returns after
/// `2 (standoff + g * thickness * sqrt(eps_r)) / c`, the same at every
/// antenna. Returns `tau[m][g]` for `g = 0..=G`.
pub fn build_layer_delays(config: &RadarConfig) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let slow = config.layer_thickness * config.layer_rel_permittivity.sqrt();
    let row: Vec<f64> = (0..=config.num_internal_reflections)
        .map(|g| 2.0 * (config.standoff_distance + g as f64 * slow) / config.propagation_speed)
        .collect();
    Ok(vec![row; config.num_antennas])
}

/// `L[m, n] = sum_g alpha_g exp(-j 2 pi f_n tau[m][g])`.
pub fn layer_response(config: &RadarConfig, coeffs: &LayerCoefficients) -> Result<CMatrix> {
    let freqs = frequency_grid(config)?;
    dim_check(coeffs.tau.len() == config.num_antennas, || {
        format!("{} delay rows for {} antennas", coeffs.tau.len(), config.num_antennas)
    })?;
    dim_check(coeffs.alpha.len() == config.num_internal_reflections + 1, || {
        format!(
            "{} layer amplitudes for G = {}",
            coeffs.alpha.len(),
            config.num_internal_reflections
        )
    })?;
    Ok(CMatrix::from_fn(config.num_antennas, config.num_freqs, |m, n| {
        coeffs
            .alpha
            .iter()
            .zip(&coeffs.tau[m])
            .map(|(&a, &tau)| a * Complex64::from_polar(1.0, -TAU * freqs[n] * tau))
            .sum()
    }))
}

/// The `MN x Q` matrix mapping grid reflectivities to vectorized data.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringDictionary {
    matrix: CMatrix,
    num_antennas: usize,
    num_freqs: usize,
}

impl SteeringDictionary {
    pub fn from_matrix(matrix: CMatrix, num_antennas: usize, num_freqs: usize) -> Result<Self> {
        dim_check(matrix.nrows() == num_antennas * num_freqs, || {
            format!("dictionary has {} rows, expected {num_antennas}*{num_freqs}", matrix.nrows())
        })?;
        Ok(Self { matrix, num_antennas, num_freqs })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    pub fn num_freqs(&self) -> usize {
        self.num_freqs
    }

    pub fn num_cells(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn num_rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, s: &CVector) -> Result<CVector> {
        dim_check(s.len() == self.num_cells(), || {
            format!("sparse vector has length {}, dictionary has {} columns", s.len(), self.num_cells())
        })?;
        Ok(&self.matrix * s)
    }

    pub fn is_unit_modulus(&self, tol: f64) -> bool {
        self.matrix.iter().all(|z| (z.norm() - 1.0).abs() <= tol)
    }
}

/// `A[m*N + n, q] = exp(-j 2 pi f_n tau_{m,q})`.
pub fn build_dictionary(config: &RadarConfig) -> Result<SteeringDictionary> {
    let freqs = frequency_grid(config)?;
    let (m_count, n_count, q_count) = (config.num_antennas, config.num_freqs, config.num_cells());
    let xs = config.antenna_positions();
    let delays: Vec<f64> = (0..m_count)
        .flat_map(|m| (0..q_count).map(move |q| (m, q)))
        .map(|(m, q)| config.grid_delay_from(xs[m], q))
        .collect();
    let matrix = CMatrix::from_fn(m_count * n_count, q_count, |k, q| {
        let (m, n) = (k / n_count, k % n_count);
        Complex64::from_polar(1.0, -TAU * freqs[n] * delays[m * q_count + q])
    });
    SteeringDictionary::from_matrix(matrix, m_count, n_count)
}

/// Point defects on the imaging grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectScene {
    num_cells: usize,
    defects: Vec<(usize, Complex64)>,
}

impl DefectScene {
    pub fn new(num_cells: usize, defects: Vec<(usize, Complex64)>) -> Result<Self> {
        let mut seen = vec![false; num_cells];
        for &(q, _) in &defects {
            if q >= num_cells {
                return Err(Error::InvalidArgument(format!("defect cell {q} outside grid of {num_cells}")));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidArgument(format!("defect cell {q} listed twice")));
            }
        }
        Ok(Self { num_cells, defects })
    }

    pub fn empty(num_cells: usize) -> Self {
        Self { num_cells, defects: Vec::new() }
    }

    /// `n_defects` distinct uniformly drawn cells with unit-magnitude,
    /// uniformly random-phase amplitudes.
    pub fn random(num_cells: usize, n_defects: usize, seed: u64) -> Result<Self> {
        if n_defects > num_cells {
            return Err(Error::InvalidArgument(format!("{n_defects} defects on {num_cells} cells")));
        }
        let mut rng = seeded_rng(seed, STREAM_TRUTH);
        let mut cells = index::sample(&mut rng, num_cells, n_defects).into_vec();
        cells.sort_unstable();
        let defects = cells.into_iter().map(|q| (q, unit_phasor(&mut rng))).collect();
        Self::new(num_cells, defects)
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn defects(&self) -> &[(usize, Complex64)] {
        &self.defects
    }

    pub fn support(&self) -> Vec<usize> {
        self.defects.iter().map(|&(q, _)| q).collect()
    }

    pub fn max_amplitude(&self) -> f64 {
        self.defects.iter().map(|(_, a)| a.norm()).fold(0.0, f64::max)
    }

    pub fn sparse_vector(&self) -> CVector {
        let mut s = CVector::from_element(self.num_cells, ZERO);
        for &(q, a) in &self.defects {
            s[q] = a;
        }
        s
    }
}

/// `D = unvec(A s)`.
pub fn defect_response(dict: &SteeringDictionary, scene: &DefectScene) -> Result<CMatrix> {
    let s = scene.sparse_vector();
    let d = dict.apply(&s)?;
    unvec_antenna_major(&d, dict.num_antennas(), dict.num_freqs())
}

/// Slab amplitudes relative to the defects, with random phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LayerStrength {
    /// Strongest slab echo divided by the strongest defect echo.
    pub ratio_to_defects: f64,
    /// Magnitude ratio between consecutive slab echoes.
    pub decay: f64,
}

impl Default for LayerStrength {
    fn default() -> Self {
        Self { ratio_to_defects: 10.0, decay: 0.5 }
    }
}

/// Draws slab amplitudes: `|alpha_g| = ratio * max|alpha_p| * decay^g`,
/// uniform random phases. Uses a stream distinct from the defect draw.
pub fn random_layer_coefficients(
    config: &RadarConfig,
    strength: LayerStrength,
    max_defect_amplitude: f64,
    seed: u64,
) -> Result<LayerCoefficients> {
    let tau = build_layer_delays(config)?;
    let mut rng = seeded_rng(seed, STREAM_TRUTH + 100);
    let top = strength.ratio_to_defects * max_defect_amplitude;
    let alpha = (0..=config.num_internal_reflections)
        .map(|g| unit_phasor(&mut rng) * (top * strength.decay.powi(g as i32)))
        .collect();
    LayerCoefficients::new(alpha, tau)
}

/// Ground truth plus noisy data for one scene.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    pub l: CMatrix,
    pub d: CMatrix,
    pub z: CMatrix,
    pub y: CMatrix,
    pub snr_db: f64,
}

impl MeasurementSet {
    /// Writes `L.csv`, `D.csv`, `Z.csv` and `Y.csv` into `dir`: a `re,im`
    /// header and one entry per line in antenna-major order.
    pub fn write_csv(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, x) in [("L", &self.l), ("D", &self.d), ("Z", &self.z), ("Y", &self.y)] {
            let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join(format!("{name}.csv")))?);
            write_complex_csv(&mut f, row_major(x))?;
            f.flush()?;
        }
        Ok(())
    }
}

pub(crate) fn row_major(x: &CMatrix) -> impl Iterator<Item = Complex64> + '_ {
    let (m, n) = x.shape();
    (0..m * n).map(move |k| x[(k / n, k % n)])
}

/// `re,im` CSV with full round-trip precision.
pub fn write_complex_csv<W: Write>(w: &mut W, values: impl IntoIterator<Item = Complex64>) -> Result<()> {
    writeln!(w, "re,im")?;
    for z in values {
        writeln!(w, "{:e},{:e}", z.re, z.im)?;
    }
    Ok(())
}

/// Synthesizes a radar measurement set. `snr_db = f64::INFINITY` gives a
/// noiseless set.
pub fn synthesize(
    config: &RadarConfig,
    coeffs: &LayerCoefficients,
    scene: &DefectScene,
    snr_db: f64,
    seed: u64,
) -> Result<MeasurementSet> {
    let l = layer_response(config, coeffs)?;
    let dict = build_dictionary(config)?;
    let d = defect_response(&dict, scene)?;
    synthesize_components(&l, &d, snr_db, seed)
}

/// Adds circular complex Gaussian noise to `L + D`, scaled so that
/// `||L + D||_F^2 / ||Z||_F^2` equals `snr_db` exactly.
pub fn synthesize_components(l: &CMatrix, d: &CMatrix, snr_db: f64, seed: u64) -> Result<MeasurementSet> {
    dim_check(l.shape() == d.shape(), || format!("L is {:?} but D is {:?}", l.shape(), d.shape()))?;
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::InvalidArgument(format!("snr_db = {snr_db}")));
    }
    let signal = l + d;
    let (m, n) = signal.shape();
    let z = if snr_db == f64::INFINITY {
        CMatrix::zeros(m, n)
    } else {
        let signal_energy = frob_sq(&signal);
        if signal_energy == 0.0 {
            return Err(Error::ZeroSignal);
        }
        let mut rng = seeded_rng(seed, STREAM_NOISE);
        let raw = CMatrix::from_fn(m, n, |_, _| complex_normal(&mut rng));
        let target = signal_energy / 10f64.powf(snr_db / 10.0);
        raw.scale((target / frob_sq(&raw)).sqrt())
    };
    let y = &signal + &z;
    Ok(MeasurementSet { l: l.clone(), d: d.clone(), z, y, snr_db })
}

/// Generic Gaussian test instance: real `L_T = U V^T` of the given rank,
/// i.i.d. N(0,1) dictionary and an `n_defects`-sparse N(0,1) vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericInstance {
    pub l_true: CMatrix,
    pub dictionary: SteeringDictionary,
    pub s_true: CVector,
    pub support: Vec<usize>,
}

impl GenericInstance {
    pub fn defect_matrix(&self) -> Result<CMatrix> {
        let d = self.dictionary.apply(&self.s_true)?;
        unvec_antenna_major(&d, self.dictionary.num_antennas(), self.dictionary.num_freqs())
    }
}

pub fn generic_gaussian_instance(
    m: usize,
    n: usize,
    q: usize,
    rank: usize,
    n_defects: usize,
    seed: u64,
) -> Result<GenericInstance> {
    if m == 0 || n == 0 || q == 0 {
        return Err(Error::InvalidArgument("dimensions must be positive".into()));
    }
    if rank > m.min(n) {
        return Err(Error::InvalidArgument(format!("rank {rank} exceeds min({m}, {n})")));
    }
    if n_defects > q {
        return Err(Error::InvalidArgument(format!("{n_defects} defects on {q} cells")));
    }
    let mut rng = seeded_rng(seed, STREAM_TRUTH);
    let u = DMatrix::from_fn(m, rank, |_, _| standard_normal(&mut rng));
    let v = DMatrix::from_fn(n, rank, |_, _| standard_normal(&mut rng));
    let a = DMatrix::from_fn(m * n, q, |_, _| standard_normal(&mut rng));
    let mut support = index::sample(&mut rng, q, n_defects).into_vec();
    support.sort_unstable();
    let mut s_true = CVector::from_element(q, ZERO);
    for &idx in &support {
        s_true[idx] = Complex64::new(standard_normal(&mut rng), 0.0);
    }
    let l_true = crate::linalg::real_to_complex(&(&u * v.transpose()));
    let dictionary = SteeringDictionary::from_matrix(crate::linalg::real_to_complex(&a), m, n)?;
    Ok(GenericInstance { l_true, dictionary, s_true, support })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{numerical_rank, vec_antenna_major};

    fn small_config() -> RadarConfig {
        RadarConfig { num_antennas: 4, num_freqs: 5, grid_rows: 3, grid_cols: 4, ..RadarConfig::default() }
    }

    #[test]
    fn frequency_grid_band_centres() {
        let f = frequency_grid(&RadarConfig::default()).unwrap();
        assert_eq!(f.len(), 20);
        assert!((f[0] - 297.625e9).abs() < 1e-3);
        assert!((f[19] - 302.375e9).abs() < 1e-3);
        for w in f.windows(2) {
            assert!((w[1] - w[0] - 0.25e9).abs() < 1e-3);
        }
        let single = RadarConfig { num_freqs: 1, ..RadarConfig::default() };
        assert_eq!(frequency_grid(&single).unwrap(), vec![300e9]);
    }

    #[test]
    fn resolution_matched_grid() {
        let cfg = RadarConfig::default();
        let [dx, dz] = cfg.resolution();
        assert!((dx - 0.15).abs() < 1e-12);
        assert!((dz - 0.03).abs() < 1e-12);
        let [w, d] = cfg.extent();
        assert!((w - 2.4).abs() < 1e-12 && (d - 0.48).abs() < 1e-12);
        let fixed = RadarConfig { grid_extent: Some([0.5, 0.5]), ..cfg };
        assert_eq!(fixed.extent(), [0.5, 0.5]);
    }

    #[test]
    fn config_validation() {
        let bad = RadarConfig { carrier_freq: 2e9, bandwidth: 5e9, ..RadarConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RadarConfig { grid_rows: 0, ..RadarConfig::default() };
        assert!(bad.validate().is_err());
        assert!((RadarConfig::default().antenna_spacing() - 0.5e-3).abs() < 1e-15);
    }

    #[test]
    fn layer_delays() {
        let cfg = RadarConfig { layer_thickness: 0.1, layer_rel_permittivity: 4.0, ..RadarConfig::default() };
        let tau = build_layer_delays(&cfg).unwrap();
        assert!((tau[0][0] - 10e-9).abs() < 1e-18);
        assert!((tau[3][1] - tau[3][0] - 2.0 * 0.1 * 2.0 / 3e8).abs() < 1e-18);
        let flat = RadarConfig { layer_thickness: 0.0, num_internal_reflections: 3, ..RadarConfig::default() };
        let tau = build_layer_delays(&flat).unwrap();
        assert!(tau[0].iter().all(|&t| t == tau[0][0]));
    }

    #[test]
    fn zero_delay_layer_is_all_ones() {
        let cfg = RadarConfig { num_internal_reflections: 0, ..small_config() };
        let coeffs = LayerCoefficients::new(vec![Complex64::new(1.0, 0.0)], vec![vec![0.0]; 4]).unwrap();
        let l = layer_response(&cfg, &coeffs).unwrap();
        assert!(l.iter().all(|&z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn broadside_layer_is_rank_one() {
        let cfg = RadarConfig { num_internal_reflections: 3, ..small_config() };
        let coeffs = random_layer_coefficients(&cfg, LayerStrength::default(), 1.0, 5).unwrap();
        let l = layer_response(&cfg, &coeffs).unwrap();
        assert_eq!(numerical_rank(&l, 1e-10), 1);
    }

    #[test]
    fn layer_response_rejects_bad_dimensions() {
        let cfg = small_config();
        let coeffs = LayerCoefficients::new(vec![Complex64::new(1.0, 0.0)], vec![vec![0.0]; 4]).unwrap();
        assert!(matches!(layer_response(&cfg, &coeffs), Err(Error::Dimension(_))));
        assert!(LayerCoefficients::new(vec![Complex64::new(1.0, 0.0)], vec![vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn dictionary_layout_and_modulus() {
        let cfg = small_config();
        let dict = build_dictionary(&cfg).unwrap();
        assert_eq!(dict.num_rows(), 20);
        assert_eq!(dict.num_cells(), 12);
        assert!(dict.is_unit_modulus(1e-12));
        let f = frequency_grid(&cfg).unwrap();
        let tau = cfg.grid_delay(2, 7);
        let expect = Complex64::from_polar(1.0, -TAU * f[3] * tau);
        assert!((dict.matrix()[(2 * 5 + 3, 7)] - expect).norm() < 1e-12);
    }

    #[test]
    fn in_material_delay_is_longer() {
        let free = small_config();
        let slow = RadarConfig { grid_in_material: true, ..small_config() };
        assert!(slow.grid_delay(0, 5) > free.grid_delay(0, 5));
    }

    #[test]
    fn defect_response_matches_columns() {
        let cfg = small_config();
        let dict = build_dictionary(&cfg).unwrap();
        let d0 = defect_response(&dict, &DefectScene::empty(12)).unwrap();
        assert!(d0.iter().all(|z| z.norm() == 0.0));
        let one = DefectScene::new(12, vec![(4, Complex64::new(1.0, 0.0))]).unwrap();
        let d1 = vec_antenna_major(&defect_response(&dict, &one).unwrap());
        assert!((d1 - dict.matrix().column(4)).norm() < 1e-14);
    }

    #[test]
    fn defect_scene_validation() {
        let c = Complex64::new(1.0, 0.0);
        assert!(DefectScene::new(4, vec![(1, c), (1, c)]).is_err());
        assert!(DefectScene::new(4, vec![(4, c)]).is_err());
        assert!(DefectScene::random(3, 4, 0).is_err());
        let s = DefectScene::random(256, 4, 11).unwrap();
        assert_eq!(s.defects().len(), 4);
        assert!(s.defects().iter().all(|(_, a)| (a.norm() - 1.0).abs() < 1e-12));
        assert_eq!(s, DefectScene::random(256, 4, 11).unwrap());
    }

    #[test]
    fn synthesize_noise_handling() {
        let cfg = small_config();
        let scene = DefectScene::random(12, 2, 3).unwrap();
        let coeffs = random_layer_coefficients(&cfg, LayerStrength::default(), 1.0, 3).unwrap();
        let clean = synthesize(&cfg, &coeffs, &scene, f64::INFINITY, 1).unwrap();
        assert!(clean.z.iter().all(|z| z.norm() == 0.0));
        assert_eq!(clean.y, &clean.l + &clean.d);
        let a = synthesize(&cfg, &coeffs, &scene, 20.0, 9).unwrap();
        let b = synthesize(&cfg, &coeffs, &scene, 20.0, 9).unwrap();
        assert_eq!(a.z, b.z);
        let snr = 10.0 * (frob_sq(&(&a.l + &a.d)) / frob_sq(&a.z)).log10();
        assert!((snr - 20.0).abs() < 1e-9);
        let zeros = CMatrix::zeros(2, 2);
        assert!(matches!(synthesize_components(&zeros, &zeros, 10.0, 0), Err(Error::ZeroSignal)));
        assert!(synthesize_components(&zeros, &zeros, f64::INFINITY, 0).is_ok());
    }

    #[test]
    fn generic_instance_shape() {
        let inst = generic_gaussian_instance(10, 20, 256, 2, 4, 1).unwrap();
        assert_eq!(inst.l_true.shape(), (10, 20));
        assert_eq!(inst.dictionary.num_rows(), 200);
        assert_eq!(inst.s_true.iter().filter(|z| z.norm() > 0.0).count(), 4);
        assert_eq!(crate::linalg::numerical_rank(&inst.l_true, 1e-10), 2);
        assert!(generic_gaussian_instance(3, 3, 5, 4, 1, 0).is_err());
        assert!(generic_gaussian_instance(3, 3, 5, 1, 6, 0).is_err());
        assert_eq!(inst, generic_gaussian_instance(10, 20, 256, 2, 4, 1).unwrap());
    }

    #[test]
    fn measurement_csv_dump() {
        let dir = tempfile::tempdir().unwrap();
        let l = CMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, j as f64));
        let set = synthesize_components(&l, &CMatrix::zeros(2, 3), f64::INFINITY, 0).unwrap();
        set.write_csv(dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("L.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "re,im");
        assert_eq!(lines[2], "0e0,1e0");
        assert_eq!(lines[4], "1e0,0e0");
    }
}
