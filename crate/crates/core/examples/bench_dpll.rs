use satlab_core::*;
use std::io::Write;
use std::time::Instant;

fn main() {
    let mut out = std::io::stdout();
    // MOMS vs LowestIndex on hard K=4 instances.
    for &(k, n, alpha) in &[(4u32, 75u32, 9.4f64), (4, 75, 9.9), (4, 75, 10.4), (4, 75, 11.0)] {
        for s in 0..5u64 {
            let seed = derive_seed(777, (alpha * 10.0) as u64, s);
            let params = GeneratorParams::from_alpha(k, n, alpha, seed).unwrap();
            let inst = generate_instance(&params);
            let t0 = Instant::now();
            let r = solve_dpll_with(&inst, u64::MAX, Branching::Moms);
            writeln!(out, "MOMS K={k} N={n} alpha={alpha} s={s} status={:?} decisions={} elapsed={:?}",
                r.status, r.stats.decisions, t0.elapsed()).unwrap();
            out.flush().unwrap();
        }
    }
    // Agreement check MOMS vs brute at N=16 over a spread of alphas.
    let mut checked = 0;
    for &k in &[2u32, 3, 4] {
        for ai in 0..8u64 {
            let alpha = match k { 2 => 0.4 + 0.2 * ai as f64, 3 => 3.0 + 0.3 * ai as f64, _ => 8.0 + 0.4 * ai as f64 };
            for s in 0..25u64 {
                let seed = derive_seed(4242, ai * 100 + k as u64, s);
                let params = GeneratorParams::from_alpha(k, 16, alpha, seed).unwrap();
                let inst = generate_instance(&params);
                let b = solve_brute_force(&inst).unwrap();
                let d1 = solve_dpll(&inst, u64::MAX);
                let d2 = solve_dpll_with(&inst, u64::MAX, Branching::Moms);
                assert_eq!(b.status, d1.status, "lowidx disagrees k={k} alpha={alpha} s={s}");
                assert_eq!(b.status, d2.status, "moms disagrees k={k} alpha={alpha} s={s}");
                checked += 1;
            }
        }
    }
    writeln!(out, "agreement checked on {checked} instances: OK").unwrap();
    // 2-SAT crossing at N=75, many samples.
    for &alpha in &[0.9f64, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5] {
        let mut sat = 0;
        let samples = 400;
        for s in 0..samples {
            let seed = derive_seed(31337, (alpha * 100.0) as u64, s);
            let params = GeneratorParams::from_alpha(2, 75, alpha, seed).unwrap();
            let inst = generate_instance(&params);
            if solve_dpll_with(&inst, u64::MAX, Branching::Moms).status == SolverStatus::Sat {
                sat += 1;
            }
        }
        writeln!(out, "K=2 N=75 alpha={alpha} p_sat={:.3}", sat as f64 / samples as f64).unwrap();
        out.flush().unwrap();
    }
}
