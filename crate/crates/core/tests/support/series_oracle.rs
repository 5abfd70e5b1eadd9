//! Fixed-point multiprecision Maclaurin series for Si and Ci.
//!
//! Every term is carried as an integer scaled by 2^400, so the alternating
//! series can be summed at arguments where double precision would lose all
//! significance. Shares nothing with the library's evaluators.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const FRACTION_BITS: u64 = 400;
const TERMS: u64 = 200;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn to_fixed(x: f64) -> BigInt {
    assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    // x = mantissa · 2^(exponent − 1075)
    let shift = FRACTION_BITS as i64 + exponent - 1075;
    assert!(shift >= 0, "argument too small for the fixed-point grid");
    BigInt::from(mantissa) << (shift as u64)
}

fn to_f64(value: &BigInt) -> f64 {
    let keep = 64;
    let shifted: BigInt = value >> (FRACTION_BITS - keep);
    shifted.to_f64().unwrap() / 2f64.powi(keep as i32)
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> FRACTION_BITS
}

/// Σ (−1)ⁿ x^{2n+1}/((2n+1)(2n+1)!), `TERMS` terms.
pub fn si(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let xf = to_fixed(x.abs());
    let x2 = mul(&xf, &xf);
    let mut power = xf.clone();
    let mut sum = xf;
    for n in 1..TERMS {
        let k = 2 * n;
        power = -mul(&power, &x2) / BigInt::from(k * (k + 1));
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(k + 1);
    }
    sign * to_f64(&sum)
}

/// γ + ln x + Σ (−1)ⁿ x^{2n}/(2n (2n)!), `TERMS` terms.
pub fn ci(x: f64) -> f64 {
    let xf = to_fixed(x);
    let x2 = mul(&xf, &xf);
    let mut power = BigInt::from(1) << FRACTION_BITS;
    let mut sum = BigInt::zero();
    for n in 1..TERMS {
        let k = 2 * n;
        power = -mul(&power, &x2) / BigInt::from((k - 1) * k);
        if power.abs().is_zero() {
            break;
        }
        sum += &power / BigInt::from(k);
    }
    EULER_GAMMA + x.ln() + to_f64(&sum)
}
