//! Invariant suite behind `ballspec selfcheck`.
//!
//! Each check prints one PASS/FAIL line. The recurrence check runs first and
//! goes through a caller-supplied kernel, so a harness can plant a faulty
//! `J_nu` and watch it get caught.

use std::io::Write;
use std::time::Instant;

use ballspec::bessel::{self, eval_xi, eval_xi_prime, eval_xi_prime_lowered, log_gamma, Order};
use ballspec::courant::{self, SharpnessStatus};
use ballspec::pleijel;
use ballspec::spectrum::{binomial, multiplicity, weyl_count, BoundaryCondition, SpectrumTable};
use ballspec::zeros::{self, bessel_zero, dirichlet_zero, neumann_zero, RootKind, DEFAULT_TOL};

use crate::{EXIT_NUMERICAL, EXIT_OK};

/// `J_nu(x)` provider used by the recurrence check.
pub type Kernel = dyn Fn(Order, f64) -> ballspec::Result<f64> + Sync;

pub fn default_kernel(nu: Order, x: f64) -> ballspec::Result<f64> {
    Ok(bessel::eval_j(nu, x)?.value)
}

const TABLE_1: [&str; 20] = [
    "0.691660", "0.455945", "0.296901", "0.192940", "0.125581", "0.081982", "0.053704",
    "0.035306", "0.023291", "0.015417", "0.010236", "0.006817", "0.004553", "0.003048",
    "0.002046", "0.001376", "0.000928", "0.000627", "0.000424", "0.000288",
];

type Outcome = Result<String, String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Sizes {
    x_points: usize,
    interlace_twice: u32,
    interlace_m: u32,
    gap_l: u32,
    disc_lambda: f64,
    cert_d_max: u32,
}

const FULL: Sizes = Sizes {
    x_points: 200,
    interlace_twice: 20,
    interlace_m: 8,
    gap_l: 8,
    disc_lambda: 2000.0,
    cert_d_max: 200,
};

const FAST: Sizes = Sizes {
    x_points: 40,
    interlace_twice: 8,
    interlace_m: 4,
    gap_l: 3,
    disc_lambda: 400.0,
    cert_d_max: 40,
};

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn x_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| 0.5 + 59.5 * i as f64 / (n - 1) as f64)
}

fn recurrence(kernel: &Kernel, s: &Sizes) -> Outcome {
    let mut worst: f64 = 0.0;
    for twice in 2..=40 {
        let nu = Order::from_twice(twice);
        let lower = nu.minus_one().expect("twice >= 2");
        for x in x_grid(s.x_points) {
            let (jm, j, jp) = (
                kernel(lower, x).map_err(e)?,
                kernel(nu, x).map_err(e)?,
                kernel(nu.plus_one(), x).map_err(e)?,
            );
            let scale = jm.abs().max(j.abs()).max(jp.abs()).max(1e-300);
            let r = (jp - 2.0 * nu.value() / x * j + jm).abs() / scale;
            if !(r <= 1e-10) {
                return Err(format!("residual {r:.3e} at nu = {nu}, x = {x}"));
            }
            worst = worst.max(r);
        }
    }
    Ok(format!("worst {worst:.2e}"))
}

fn derivative_formulas(s: &Sizes) -> Outcome {
    let mut worst: f64 = 0.0;
    for l in 1..=20 {
        for d in 2..=5 {
            for x in x_grid(s.x_points).step_by(4) {
                let a = eval_xi_prime(l, d, x).map_err(e)?.value;
                let b = eval_xi_prime_lowered(l, d, x).map_err(e)?.value;
                let scale = eval_xi(l, d, x).map_err(e)?.value.abs().hypot(a).max(b.abs());
                let r = (a - b).abs() / scale;
                if !(r <= 1e-11) {
                    return Err(format!("l = {l}, d = {d}, r = {x}: {a} vs {b}"));
                }
                worst = worst.max(r);
            }
        }
    }
    Ok(format!("worst {worst:.2e}"))
}

fn xi_recursion(s: &Sizes) -> Outcome {
    for l in 2..=20 {
        for d in 2..=5 {
            for x in x_grid(s.x_points).step_by(4) {
                let xl = eval_xi(l, d, x).map_err(e)?.value;
                let x1 = eval_xi(l - 1, d, x).map_err(e)?.value;
                let x2 = eval_xi(l - 2, d, x).map_err(e)?.value;
                let rhs = (2 * l + d - 4) as f64 / x * x1 - x2;
                let scale = xl.abs().max(x1.abs()).max(x2.abs());
                if !((xl - rhs).abs() <= 1e-10 * scale) {
                    return Err(format!("l = {l}, d = {d}, r = {x}"));
                }
            }
        }
    }
    Ok(String::new())
}

fn sinc() -> Outcome {
    let c = |r: f64| Ok::<_, String>(eval_xi(0, 3, r).map_err(e)?.value * r / r.sin());
    let c0 = c(0.5)?;
    for r in [1.0, 2.0] {
        if (c(r)? - c0).abs() > 1e-12 * c0.abs() {
            return Err(format!("Xi_0 r / sin r varies at r = {r}"));
        }
    }
    Ok(String::new())
}

fn log_gamma_recursion() -> Outcome {
    let mut x = 0.5;
    while x <= 100.0 {
        let r = log_gamma(x + 1.0).map_err(e)? - log_gamma(x).map_err(e)? - x.ln();
        if r.abs() > 1e-13 {
            return Err(format!("residual {r:.3e} at x = {x}"));
        }
        x += 0.25;
    }
    Ok(String::new())
}

fn interlacing(s: &Sizes) -> Outcome {
    for twice in 0..=s.interlace_twice {
        let nu = Order::from_twice(twice);
        for m in 1..=s.interlace_m {
            let a = bessel_zero(nu, m, DEFAULT_TOL).map_err(e)?;
            let b = bessel_zero(nu.plus_one(), m, DEFAULT_TOL).map_err(e)?;
            let c = bessel_zero(nu, m + 1, DEFAULT_TOL).map_err(e)?;
            if !(a + 1e-6 < b && b + 1e-6 < c) {
                return Err(format!("nu = {nu}, m = {m}: {a}, {b}, {c}"));
            }
        }
    }
    Ok(String::new())
}

fn first_zero_bounds() -> Outcome {
    for twice in 1..=120 {
        let nu = Order::from_twice(twice);
        let (lo, hi) = zeros::first_zero_bounds(nu);
        let z = bessel_zero(nu, 1, DEFAULT_TOL).map_err(e)?;
        if !(lo < z && z < hi) {
            return Err(format!("nu = {nu}: {lo} < {z} < {hi} fails"));
        }
    }
    Ok(String::new())
}

fn neumann_dirichlet_identity() -> Outcome {
    for d in 2..=5 {
        for m in 1..=6 {
            let b = neumann_zero(0, d, m + 1, DEFAULT_TOL).map_err(e)?;
            let a = dirichlet_zero(1, d, m, DEFAULT_TOL).map_err(e)?;
            if (a - b).abs() > 1e-11 * a {
                return Err(format!("d = {d}, m = {m}: {b} vs {a}"));
            }
        }
    }
    Ok(String::new())
}

fn neumann_gap(s: &Sizes) -> Outcome {
    let mut min_gap = f64::INFINITY;
    for d in 2..=3 {
        let families: Vec<Vec<f64>> = (0..=s.gap_l + 4)
            .map(|l| {
                zeros::zeros_up_to(RootKind::NeumannXiPrime, l, d, 60.0, DEFAULT_TOL)
                    .map(|v| v.into_iter().filter(|&z| z > 0.0).collect())
            })
            .collect::<Result<_, _>>()
            .map_err(e)?;
        for l in 0..=s.gap_l as usize {
            for p in 1..=4 {
                for x in &families[l] {
                    for y in &families[l + p] {
                        min_gap = min_gap.min((x - y).abs());
                    }
                }
            }
        }
    }
    if min_gap > 1e-3 {
        Ok(format!("closest pair {min_gap:.3e}"))
    } else {
        Err(format!("closest pair {min_gap:.3e}"))
    }
}

fn neumann_before_dirichlet() -> Outcome {
    for l in 1..=10 {
        for d in 2..=5 {
            let b = neumann_zero(l, d, 1, DEFAULT_TOL).map_err(e)?;
            let a = dirichlet_zero(l, d, 1, DEFAULT_TOL).map_err(e)?;
            if !(b < a) {
                return Err(format!("l = {l}, d = {d}: {b} >= {a}"));
            }
        }
    }
    Ok(String::new())
}

fn telescoping() -> Outcome {
    for d in 2..=8u32 {
        let mut sum: u128 = 0;
        for l in 0..=30u32 {
            sum += multiplicity(l, d).map_err(e)? as u128;
            let (li, di) = (l as i64, d as i64);
            let expect = binomial(li + di - 1, di - 1).map_err(e)? + binomial(li + di - 2, di - 1).map_err(e)?;
            if sum != expect {
                return Err(format!("d = {d}, L = {l}: {sum} != {expect}"));
            }
        }
    }
    Ok(String::new())
}

fn tiling_and_weyl(s: &Sizes) -> Outcome {
    let mut notes = Vec::new();
    for (d, lambda) in [(2, s.disc_lambda), (3, s.disc_lambda * 0.45)] {
        for bc in BoundaryCondition::ALL {
            let t = SpectrumTable::enumerate(d, bc, lambda).map_err(e)?;
            t.validate().map_err(e)?;
            if d != 2 {
                continue;
            }
            let ratio = t.count() as f64 / weyl_count(d, lambda);
            if (ratio - 1.0).abs() > 0.15 {
                return Err(format!("d = {d}, {bc}: N / Weyl = {ratio:.3}"));
            }
            notes.push(format!("{ratio:.3}"));
        }
    }
    Ok(format!("N / Weyl = {}", notes.join(", ")))
}

fn courant_disc(s: &Sizes) -> Outcome {
    for bc in BoundaryCondition::ALL {
        let t = SpectrumTable::enumerate(2, bc, s.disc_lambda).map_err(e)?;
        for r in &t.records {
            let mu = courant::nodal_count_disc(r.l, r.m, bc).map_err(e)?;
            if mu > r.label_first {
                return Err(format!("{bc} (l = {}, m = {}): mu = {mu} > {}", r.l, r.m, r.label_first));
            }
        }
        let v = courant::verdicts_for_table(&t).map_err(e)?;
        let sharp = courant::sharp_labels(&v);
        if sharp != [1, 2, 4] {
            return Err(format!("{bc}: sharp labels {sharp:?}"));
        }
    }
    Ok(String::new())
}

fn ball_theorems() -> Outcome {
    for d in 3..=5 {
        for bc in BoundaryCondition::ALL {
            let v = courant::courant_sharp_ball(d, bc, 6, 4).map_err(e)?;
            let sharp = courant::sharp_labels(&v);
            if sharp != [1, 2] {
                return Err(format!("d = {d}, {bc}: sharp labels {sharp:?}"));
            }
            if !v.iter().any(|v| v.status == SharpnessStatus::ExcludedRadialOrdering) {
                return Err(format!("d = {d}, {bc}: no radial exclusion checked"));
            }
        }
        courant::sphere_courant_sharp(d, courant::DEFAULT_SPHERE_LMAX).map_err(e)?;
    }
    Ok(String::new())
}

fn table_1() -> Outcome {
    let rows = pleijel::gamma_table(2, 21).map_err(e)?;
    for (r, want) in rows.iter().zip(TABLE_1) {
        let got = pleijel::round6(r.gamma).map_err(e)?;
        if got != want {
            return Err(format!("gamma({}) = {got}, expected {want}", r.d));
        }
    }
    Ok(String::new())
}

fn anchors() -> Outcome {
    let j01 = bessel_zero(Order::integer(0), 1, DEFAULT_TOL).map_err(e)?;
    let g2 = pleijel::gamma(2).map_err(e)?;
    let g3 = pleijel::gamma(3).map_err(e)?;
    let r2 = (g2 - 4.0 / (j01 * j01)).abs() / g2;
    let r3 = (g3 - 9.0 / (2.0 * std::f64::consts::PI.powi(2))).abs() / g3;
    if r2 <= 1e-12 && r3 <= 1e-12 {
        Ok(format!("{r2:.1e}, {r3:.1e}"))
    } else {
        Err(format!("relative errors {r2:.3e}, {r3:.3e}"))
    }
}

fn quotient_below_one() -> Outcome {
    let curve = pleijel::quotient_curve(2, 94).map_err(e)?;
    let (d, q) = curve.last().copied().unwrap_or_default();
    Ok(format!("quotient at d = {d} is {q:.6}"))
}

fn certificates(s: &Sizes) -> Outcome {
    let certs = pleijel::certify_range(4, s.cert_d_max).map_err(e)?;
    let n: usize = certs.iter().map(|c| c.checks.len()).sum();
    Ok(format!("{n} inequalities for d = 4..{}", s.cert_d_max))
}

/// Run the suite, printing one line per check, and return the exit status.
pub fn run(fast: bool, kernel: &Kernel, out: &mut dyn Write) -> i32 {
    let s = if fast { &FAST } else { &FULL };
    let checks: Vec<Check> = vec![
        ("recurrence_residual", Box::new(|| recurrence(kernel, s))),
        ("derivative_formulas", Box::new(|| derivative_formulas(s))),
        ("xi_recursion", Box::new(|| xi_recursion(s))),
        ("sinc_closed_form", Box::new(sinc)),
        ("log_gamma_recursion", Box::new(log_gamma_recursion)),
        ("interlacing", Box::new(|| interlacing(s))),
        ("first_zero_bounds", Box::new(first_zero_bounds)),
        ("neumann_dirichlet_identity", Box::new(neumann_dirichlet_identity)),
        ("neumann_zero_gap", Box::new(|| neumann_gap(s))),
        ("neumann_before_dirichlet", Box::new(neumann_before_dirichlet)),
        ("telescoping_multiplicity", Box::new(telescoping)),
        ("label_tiling_weyl", Box::new(|| tiling_and_weyl(s))),
        ("courant_disc", Box::new(|| courant_disc(s))),
        ("ball_sharp_sets", Box::new(ball_theorems)),
        ("pleijel_table", Box::new(table_1)),
        ("pleijel_anchors", Box::new(anchors)),
        ("quotient_below_one", Box::new(quotient_below_one)),
        ("monotonicity_certificates", Box::new(|| certificates(s))),
    ];
    let total = checks.len();
    let mut first_failure = None;
    let mut passed = 0;
    let started = Instant::now();
    for (name, check) in checks {
        match check() {
            Ok(note) => {
                passed += 1;
                let _ = if note.is_empty() {
                    writeln!(out, "PASS {name}")
                } else {
                    writeln!(out, "PASS {name}: {note}")
                };
            }
            Err(why) => {
                let _ = writeln!(out, "FAIL {name}: {why}");
                first_failure.get_or_insert(name);
            }
        }
    }
    let _ = writeln!(
        out,
        "selfcheck{}: {passed}/{total} passed in {:.1} s",
        if fast { " --fast" } else { "" },
        started.elapsed().as_secs_f64()
    );
    match first_failure {
        None => EXIT_OK,
        Some(name) => {
            let _ = writeln!(out, "first failure: {name}");
            EXIT_NUMERICAL
        }
    }
}
