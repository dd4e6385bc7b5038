//! SU(2) Clebsch-Gordan coefficients (Condon-Shortley phase) from Racah's
//! closed-form sum, and the trace-orthonormal spin tensor operators built
//! from them. Used as an independent route to the SU(2) tensor family.

use std::fmt;

use num_complex::Complex64;

use crate::CMatrix;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt(2 * v)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

fn ln_factorial(k: i64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `⟨j1 m1; j2 m2 | J M⟩`. Returns 0 whenever a selection rule fails.
pub fn su2_cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    let (tj1, tm1, tj2, tm2, tj, tm) = (j1.0, m1.0, j2.0, m2.0, j.0, m.0);
    if tm1 + tm2 != tm {
        return 0.0;
    }
    if tj1 < 0 || tj2 < 0 || tj < 0 {
        return 0.0;
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm.abs() > tj {
        return 0.0;
    }
    if (tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj + tm) % 2 != 0 {
        return 0.0;
    }
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return 0.0;
    }
    // all of the following are integers
    let a = (tj1 + tj2 - tj) / 2; // j1+j2-J
    let b = (tj1 - tm1) / 2; // j1-m1
    let c = (tj2 + tm2) / 2; // j2+m2
    let d = (tj - tj2 + tm1) / 2; // J-j2+m1
    let e = (tj - tj1 - tm2) / 2; // J-j1-m2

    let ln_pre = 0.5
        * (((tj + 1) as f64).ln()
            + ln_factorial((tj + tj1 - tj2) / 2)
            + ln_factorial((tj - tj1 + tj2) / 2)
            + ln_factorial(a)
            - ln_factorial((tj1 + tj2 + tj) / 2 + 1)
            + ln_factorial((tj + tm) / 2)
            + ln_factorial((tj - tm) / 2)
            + ln_factorial((tj1 - tm1) / 2)
            + ln_factorial((tj1 + tm1) / 2)
            + ln_factorial((tj2 - tm2) / 2)
            + ln_factorial((tj2 + tm2) / 2));

    let kmin = 0.max(-d).max(-e);
    let kmax = a.min(b).min(c);
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let ln_den = ln_factorial(k)
            + ln_factorial(a - k)
            + ln_factorial(b - k)
            + ln_factorial(c - k)
            + ln_factorial(d + k)
            + ln_factorial(e + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (ln_pre - ln_den).exp();
    }
    sum
}

/// `T^j_{LM} = Σ_{m m'} |jm⟩⟨jm'| C^{LM}_{jm; j,−m'} (−1)^{j−m'}` in the
/// basis `m = j, j−1, …, −j`.
pub fn spin_tensor_operator(j: HalfInt, l: i64, mm: i64) -> CMatrix {
    let dim = (j.0 + 1) as usize;
    let mut t = CMatrix::zeros(dim, dim);
    let big_l = HalfInt::from(l);
    let big_m = HalfInt::from(mm);
    for r in 0..dim {
        let m = HalfInt(j.0 - 2 * r as i64);
        for c in 0..dim {
            let mp = HalfInt(j.0 - 2 * c as i64);
            let cg = su2_cg(j, m, j, HalfInt(-mp.0), big_l, big_m);
            if cg == 0.0 {
                continue;
            }
            let sign = if ((j.0 - mp.0) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            t[(r, c)] = Complex64::new(sign * cg, 0.0);
        }
    }
    t
}

/// `C̃_L = C^{L0}_{jj; j,−j}`, the highest-weight entry of `T^j_{L0}`.
pub fn spin_highest_weight_coefficient(j: HalfInt, l: i64) -> f64 {
    su2_cg(j, j, j, HalfInt(-j.0), HalfInt::from(l), HalfInt(0))
}
