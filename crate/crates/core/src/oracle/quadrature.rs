//! 15-point Gauss-Kronrod panels with an embedded 7-point Gauss estimate.

/// Kronrod abscissae on `[0, 1]`; the negative half is mirrored. Odd indices
/// are the Gauss nodes.
pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for `XGK[1], XGK[3], XGK[5]` and the centre.
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// The 15 nodes of `[left, right]` with their Kronrod and Gauss weights
/// (zero Gauss weight for Kronrod-only nodes), in a fixed order.
pub(crate) fn panel_nodes(left: f64, right: f64) -> [(f64, f64, f64); 15] {
    let centre = 0.5 * (left + right);
    let half = 0.5 * (right - left);
    let mut nodes = [(0.0, 0.0, 0.0); 15];
    for j in 0..7 {
        let gauss = if j % 2 == 1 { WG[j / 2] * half } else { 0.0 };
        let offset = half * XGK[j];
        nodes[2 * j] = (centre - offset, WGK[j] * half, gauss);
        nodes[2 * j + 1] = (centre + offset, WGK[j] * half, gauss);
    }
    nodes[14] = (centre, WGK[7] * half, WG[3] * half);
    nodes
}

/// QUADPACK's error estimate from the Kronrod/Gauss difference.
pub(crate) fn rescaled_error(kronrod: f64, gauss: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = (kronrod - gauss).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = libm::pow(200.0 * err / res_asc, 1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
