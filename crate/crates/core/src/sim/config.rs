use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::SimError;

/// Timing, energy and geometry of the modeled device. Every field has a
/// default; files only need the keys they change.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceConfig {
    pub clock_ns: f64,
    pub set_reset_ns: f64,
    /// Program energy per written cell.
    pub write_energy_pj: f64,
    pub unit_rows: usize,
    pub unit_cols: usize,
    pub units_per_tile: usize,
    pub cycles_xor: u64,
    pub cycles_nor: u64,
    pub cycles_not: u64,
    pub cycles_nand: u64,
    pub cycles_minority: u64,
    pub cycles_or: u64,
    pub bits: u64,
    pub dma_read_cycles: u64,
    pub dma_write_cycles: u64,
    /// Rows per permutation burst window.
    pub burst_rows: usize,
    pub comparator_stage_cycles: u64,
    pub comparator_fanin: usize,
    pub ucie_lanes: u32,
    pub ucie_lane_gbps: f64,
    pub hbm_gbps: f64,
    pub fenand_gbps: f64,
    pub ucie_pj_per_bit: f64,
    pub hbm_pj_per_bit: f64,
    pub fenand_read_pj_per_bit: f64,
    pub fenand_write_pj_per_bit: f64,
    /// Peripheral/logic energy per active tile cycle.
    pub logic_pj_per_cycle: f64,
    pub fw_tiles: usize,
    pub mp_tiles: usize,
    /// Overlap boundary prefetch (stage 3) with compute.
    pub pipelining: bool,
    /// Fraction of FW relaxations that write, for estimated runs. `None`
    /// uses the calibrated default.
    pub update_probability: Option<f64>,
    /// Area figures echoed into reports, not modeled.
    pub area_mm2: BTreeMap<String, f64>,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        DeviceConfig {
            clock_ns: 2.0,
            set_reset_ns: 20.0,
            write_energy_pj: 0.56,
            unit_rows: 1024,
            unit_cols: 1024,
            units_per_tile: 130,
            cycles_xor: 2,
            cycles_nor: 1,
            cycles_not: 1,
            cycles_nand: 1,
            cycles_minority: 1,
            cycles_or: 1,
            bits: 32,
            dma_read_cycles: 1,
            dma_write_cycles: 10,
            burst_rows: 32,
            comparator_stage_cycles: 6,
            comparator_fanin: 32,
            ucie_lanes: 64,
            ucie_lane_gbps: 32.0,
            hbm_gbps: PLACEHOLDER_HBM_GBPS,
            fenand_gbps: PLACEHOLDER_FENAND_GBPS,
            ucie_pj_per_bit: PLACEHOLDER_UCIE_PJ,
            hbm_pj_per_bit: PLACEHOLDER_HBM_PJ,
            fenand_read_pj_per_bit: PLACEHOLDER_FENAND_READ_PJ,
            fenand_write_pj_per_bit: PLACEHOLDER_FENAND_WRITE_PJ,
            logic_pj_per_cycle: PLACEHOLDER_LOGIC_PJ,
            fw_tiles: 16,
            mp_tiles: 16,
            pipelining: true,
            update_probability: None,
            area_mm2: BTreeMap::new(),
        }
    }
}

// No published values exist for these; they ship as labeled placeholders.
const PLACEHOLDER_HBM_GBPS: f64 = 6553.6;
const PLACEHOLDER_FENAND_GBPS: f64 = 512.0;
const PLACEHOLDER_UCIE_PJ: f64 = 0.5;
const PLACEHOLDER_HBM_PJ: f64 = 3.9;
const PLACEHOLDER_FENAND_READ_PJ: f64 = 10.0;
const PLACEHOLDER_FENAND_WRITE_PJ: f64 = 50.0;
const PLACEHOLDER_LOGIC_PJ: f64 = 1.0;

impl DeviceConfig {
    /// Reads TOML, or JSON when the extension is `.json`.
    pub fn from_path(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path)?;
        let cfg: DeviceConfig = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text)?
        } else {
            toml::from_str(&text)?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, SimError> {
        let cfg: DeviceConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let floats = [
            ("clock_ns", self.clock_ns),
            ("set_reset_ns", self.set_reset_ns),
            ("write_energy_pj", self.write_energy_pj),
            ("ucie_lane_gbps", self.ucie_lane_gbps),
            ("hbm_gbps", self.hbm_gbps),
            ("fenand_gbps", self.fenand_gbps),
            ("ucie_pj_per_bit", self.ucie_pj_per_bit),
            ("hbm_pj_per_bit", self.hbm_pj_per_bit),
            ("fenand_read_pj_per_bit", self.fenand_read_pj_per_bit),
            ("fenand_write_pj_per_bit", self.fenand_write_pj_per_bit),
            ("logic_pj_per_cycle", self.logic_pj_per_cycle),
        ];
        for (name, v) in floats {
            if !(v.is_finite() && v > 0.0) {
                return Err(SimError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        let counts = [
            ("unit_rows", self.unit_rows as u64),
            ("unit_cols", self.unit_cols as u64),
            ("units_per_tile", self.units_per_tile as u64),
            ("cycles_xor", self.cycles_xor),
            ("cycles_nor", self.cycles_nor),
            ("cycles_not", self.cycles_not),
            ("cycles_nand", self.cycles_nand),
            ("cycles_minority", self.cycles_minority),
            ("cycles_or", self.cycles_or),
            ("bits", self.bits),
            ("dma_read_cycles", self.dma_read_cycles),
            ("dma_write_cycles", self.dma_write_cycles),
            ("burst_rows", self.burst_rows as u64),
            ("comparator_stage_cycles", self.comparator_stage_cycles),
            ("ucie_lanes", self.ucie_lanes as u64),
            ("fw_tiles", self.fw_tiles as u64),
            ("mp_tiles", self.mp_tiles as u64),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(SimError::Config(format!("{name} must be positive")));
            }
        }
        if self.comparator_fanin < 2 {
            return Err(SimError::Config("comparator_fanin must be at least 2".into()));
        }
        if let Some(p) = self.update_probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::Config(format!("update_probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn ucie_gbps(&self) -> f64 {
        self.ucie_lanes as f64 * self.ucie_lane_gbps
    }

    /// Cycles of one set/reset pulse, rounded up.
    pub fn write_pulse_cycles(&self) -> u64 {
        (self.set_reset_ns / self.clock_ns).ceil() as u64
    }

    pub fn word_bytes(&self) -> u64 {
        self.bits.div_ceil(8)
    }

    /// Fields still at their shipped placeholder values.
    pub fn placeholders(&self) -> Vec<&'static str> {
        let checks = [
            ("hbm_gbps", self.hbm_gbps, PLACEHOLDER_HBM_GBPS),
            ("fenand_gbps", self.fenand_gbps, PLACEHOLDER_FENAND_GBPS),
            ("ucie_pj_per_bit", self.ucie_pj_per_bit, PLACEHOLDER_UCIE_PJ),
            ("hbm_pj_per_bit", self.hbm_pj_per_bit, PLACEHOLDER_HBM_PJ),
            ("fenand_read_pj_per_bit", self.fenand_read_pj_per_bit, PLACEHOLDER_FENAND_READ_PJ),
            ("fenand_write_pj_per_bit", self.fenand_write_pj_per_bit, PLACEHOLDER_FENAND_WRITE_PJ),
            ("logic_pj_per_cycle", self.logic_pj_per_cycle, PLACEHOLDER_LOGIC_PJ),
        ];
        checks
            .into_iter()
            .filter(|&(_, v, p)| v == p)
            .map(|(name, _, _)| name)
            .collect()
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn config_hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(json))
    }
}
