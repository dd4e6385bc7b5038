//! Closed forms for the small cases that have them, shown next to the
//! computed tables by `swkernel table` and compared by `swkernel verify`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::kernel::KernelCoefficients;

#[derive(Clone, Debug, Serialize)]
pub struct GoldenEntry {
    pub quantity: String,
    pub symbolic: String,
    pub value: f64,
}

fn entry(quantity: impl Into<String>, symbolic: &str, value: f64) -> GoldenEntry {
    GoldenEntry {
        quantity: quantity.into(),
        symbolic: symbolic.to_string(),
        value,
    }
}

fn is(s: f64, v: f64) -> bool {
    (s - v).abs() < 1e-15
}

/// Known closed forms for `(n, λ)` at ordering `s`; empty when none exist.
pub fn entries(n: usize, lambda: usize, s: f64) -> Vec<GoldenEntry> {
    match (n, lambda) {
        (2, _) => su2(lambda, s),
        (3, 1) => su3_fundamental(s),
        (3, 2) => su3_symmetric_two(s),
        _ => Vec::new(),
    }
}

fn su2(lambda: usize, _s: f64) -> Vec<GoldenEntry> {
    let mut out = Vec::new();
    for a in 0..=lambda {
        for b in 0..=lambda {
            let (sym, v) = if a == b {
                ("2π", 2.0 * PI)
            } else {
                ("0", 0.0)
            };
            out.push(entry(format!("g[{a}][{b}]"), sym, v));
        }
    }
    out
}

fn su3_fundamental(s: f64) -> Vec<GoldenEntry> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r6 = 6f64.sqrt();
    let q = 4f64.powf(-s);
    let mut out = vec![
        entry("g[0][0]", "10π/3", 10.0 * PI / 3.0),
        entry("g[0][1]", "−2√2π/3", -2.0 * r2 * PI / 3.0),
        entry("g[1][0]", "−2√2π/3", -2.0 * r2 * PI / 3.0),
        entry("g[1][1]", "8π/3", 8.0 * PI / 3.0),
        entry(
            "F[0]",
            "(1/√3)^(−s)/3^((s+1)/2)",
            (1.0 / r3).powf(-s) / 3f64.powf((s + 1.0) / 2.0),
        ),
        entry(
            "F[1]",
            "(√(2/3))^(−s)/24^((s+1)/2)",
            (2f64 / 3.0).sqrt().powf(-s) / 24f64.powf((s + 1.0) / 2.0),
        ),
        entry("c[0]", "(8+4^(−s))/(24√3π)", (8.0 + q) / (24.0 * r3 * PI)),
        entry(
            "c[1]",
            "(4+5·4^(−s))/(24√6π)",
            (4.0 + 5.0 * q) / (24.0 * r6 * PI),
        ),
    ];
    let f = if is(s, -1.0) {
        Some("e^(−2iω)/2π")
    } else if is(s, 0.0) {
        Some("(e^(iω)+2e^(−2iω))/8π")
    } else if is(s, 1.0) {
        Some("(5e^(iω)+6e^(−2iω))/32π")
    } else {
        None
    };
    if let Some(f) = f {
        // value at ω = 0
        let v = match f {
            "e^(−2iω)/2π" => 1.0 / (2.0 * PI),
            "(e^(iω)+2e^(−2iω))/8π" => 3.0 / (8.0 * PI),
            _ => 11.0 / (32.0 * PI),
        };
        out.push(entry("f(0)", f, v));
    }
    if is(s, 0.0) {
        out.push(entry("P[0]", "1/2", 0.5));
        out.push(entry("P[1]", "1/4", 0.25));
        out.push(entry("P[2]", "1/4", 0.25));
    }
    out
}

fn su3_symmetric_two(s: f64) -> Vec<GoldenEntry> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r5 = 5f64.sqrt();
    let r6 = 6f64.sqrt();
    let r10 = 10f64.sqrt();
    let r15 = 15f64.sqrt();
    let r30 = 30f64.sqrt();
    let mut out = vec![
        entry("g[0][0]", "14π/3", 14.0 * PI / 3.0),
        entry("g[0][1]", "−2√5π/3", -2.0 * r5 * PI / 3.0),
        entry("g[0][2]", "0", 0.0),
        entry("g[1][0]", "−2√5π/3", -2.0 * r5 * PI / 3.0),
        entry("g[1][1]", "56π/15", 56.0 * PI / 15.0),
        entry("g[1][2]", "−6π/5", -6.0 * PI / 5.0),
        entry("g[2][0]", "0", 0.0),
        entry("g[2][1]", "−6π/5", -6.0 * PI / 5.0),
        entry("g[2][2]", "18π/5", 18.0 * PI / 5.0),
        entry(
            "F[0]",
            "(√6)^s/6^((s+1)/2)",
            r6.powf(s) / 6f64.powf((s + 1.0) / 2.0),
        ),
        entry(
            "F[1]",
            "2^(−s)(√(15/2))^s/48^((s+1)/2)",
            2f64.powf(-s) * (7.5f64).sqrt().powf(s) / 48f64.powf((s + 1.0) / 2.0),
        ),
        entry(
            "F[2]",
            "(√(10/3))^s/162^((s+1)/2)",
            (10f64 / 3.0).sqrt().powf(s) / 162f64.powf((s + 1.0) / 2.0),
        ),
    ];
    let c: Option<[(&str, f64); 3]> = if is(s, -1.0) {
        Some([
            ("1/(2√6π)", 1.0 / (2.0 * r6 * PI)),
            ("√2/(√15π)", r2 / (r15 * PI)),
            ("√(3/10)/(2π)", (0.3f64).sqrt() / (2.0 * PI)),
        ])
    } else if is(s, 0.0) {
        Some([
            (
                "(90√6+2√10+9√15)/(2160π)",
                (90.0 * r6 + 2.0 * r10 + 9.0 * r15) / (2160.0 * PI),
            ),
            (
                "(14√2+63√3+18√30)/(2160π)",
                (14.0 * r2 + 63.0 * r3 + 18.0 * r30) / (2160.0 * PI),
            ),
            (
                "(38√2+21√3+6√30)/(2160π)",
                (38.0 * r2 + 21.0 * r3 + 6.0 * r30) / (2160.0 * PI),
            ),
        ])
    } else if is(s, 1.0) {
        Some([
            ("8051/(31104√6π)", 8051.0 / (31104.0 * r6 * PI)),
            ("9701/(31104√30π)", 9701.0 / (31104.0 * r30 * PI)),
            ("3767/(31104√30π)", 3767.0 / (31104.0 * r30 * PI)),
        ])
    } else {
        None
    };
    if let Some(c) = c {
        for (i, (sym, v)) in c.into_iter().enumerate() {
            out.push(entry(format!("c[{i}]"), sym, v));
        }
    }
    out
}

/// A closed form next to the computed value.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenRow {
    pub quantity: String,
    pub symbolic: String,
    pub expected: f64,
    pub computed: f64,
    pub deviation: f64,
}

/// Looks up every entry of [`entries`] in `kc`.
pub fn compare(n: usize, lambda: usize, kc: &KernelCoefficients) -> Vec<GoldenRow> {
    entries(n, lambda, kc.s)
        .into_iter()
        .filter_map(|e| {
            let computed = lookup(kc, &e.quantity)?;
            Some(GoldenRow {
                deviation: (computed - e.value).abs(),
                quantity: e.quantity,
                symbolic: e.symbolic,
                expected: e.value,
                computed,
            })
        })
        .collect()
}

fn lookup(kc: &KernelCoefficients, quantity: &str) -> Option<f64> {
    let index = |s: &str| -> Option<Vec<usize>> {
        s.split(['[', ']'])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().ok())
            .collect()
    };
    if quantity == "f(0)" {
        return Some(kc.f_at(0.0).re);
    }
    let (name, rest) = quantity.split_at(1);
    let idx = index(rest)?;
    match (name, idx.as_slice()) {
        ("g", [a, b]) => kc.g.get(*a)?.get(*b).copied(),
        ("F", [a]) => kc.f.get(*a).copied(),
        ("c", [a]) => kc.c.get(*a).copied(),
        ("P", [a]) => kc.p_diagonal.get(*a).copied(),
        _ => None,
    }
}
