use super::{
    bernstein_sato_monomial, generalized_bfunction, parse_graded_element, tensor_element, BFunctionResult, DmodError,
    EngineConfig,
};
use crate::arith::{Poly, Rat, Var};
use crate::par::Execution;
use crate::parse::{parse_poly_in, print_poly};
use crate::report::{Check, Source};

/// Engine value of `b` for `x dt^2 (xy)^s`, confirmed by a closed-form
/// orbit computation; divisibility alone only brackets it between `s` and `s(s+1)`.
pub const DERIVED_PRODUCT_EXAMPLE: &str = "s^2 + s";

fn sp(text: &str) -> Poly {
    parse_poly_in(text, Var::S).expect("literal polynomial")
}

fn engine(monomial: &str, window: i64) -> Result<EngineConfig, DmodError> {
    EngineConfig::parse(monomial)?.with_window(window)
}

/// `b_u` for `u` given as text, recomputed at twice the window; the two
/// runs must agree.
fn certified(expr: &str, monomial: &str, window: i64) -> Result<BFunctionResult, DmodError> {
    let cfg = engine(monomial, window)?;
    let u = parse_graded_element(expr, &cfg)?;
    let b = generalized_bfunction(&u, &cfg)?;
    let wide = cfg.clone().with_window(2 * b.window_used)?;
    let again = generalized_bfunction(&u, &wide)?;
    if again.poly != b.poly {
        return Err(DmodError::Inconsistent(format!("{expr}: {b} at window {}, {again} at {}", b.window_used, wide.window)));
    }
    Ok(b)
}

fn value_or_error(r: &Result<BFunctionResult, DmodError>) -> String {
    match r {
        Ok(b) => b.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Equality check of a computed b-function against an expected polynomial.
fn equals(name: &str, inputs: &str, source: Source, got: &Result<BFunctionResult, DmodError>, want: &Poly) -> Check {
    let pass = got.as_ref().is_ok_and(|b| b.poly == *want);
    Check::new(name, inputs, source, value_or_error(got), pass)
}

/// Every quantity of the worked example on `x`, `y` and `xy`.
pub fn paper_example_suite(window: i64) -> Vec<Check> {
    let mut out = Vec::new();
    let b_v = certified("tinv^2 @ fs", "y", window);
    out.push(equals("b_t^-2_ys", "tinv^2 @ fs; f = y", Source::Paper, &b_v, &sp("s - 1")));
    let b_u = certified("x*dt^2 @ fs", "x", window);
    out.push(equals("b_xdt^2_xs", "x*dt^2 @ fs; f = x", Source::Paper, &b_u, &sp("s + 1")));
    let b_fs = certified("fs", "x", window);
    let b_f = engine("x", window).and_then(|c| bernstein_sato_monomial(&c));
    let pass = matches!((&b_fs, &b_f), (Ok(a), Ok(b)) if a.poly == b.poly && a.poly == sp("s + 1"));
    out.push(Check::new("b_fs_is_b_f", "fs; f = x", Source::Paper, value_or_error(&b_fs), pass));

    let b_txs = certified("t @ fs", "x", window);
    out.push(equals("b_tx_s", "t @ fs; f = x", Source::Paper, &b_txs, &sp("s + 2")));
    let b_ys = certified("fs", "y", window);
    let b_xxy = certified("x @ fs", "x,y", window);
    out.push(equals("b_x(xy)_s", "x @ fs; f = xy", Source::Paper, &b_xxy, &sp("s^2 + 3*s + 2")));
    let pass = matches!((&b_xxy, &b_txs, &b_ys), (Ok(p), Ok(a), Ok(b)) if p.poly == &a.poly * &b.poly);
    out.push(Check::new("b_x(xy)_s_is_b_tx_s_times_b_ys", "x @ fs; t @ fs; fs on y", Source::Paper, value_or_error(&b_xxy), pass));

    // the tensor of the two example elements is x dt^2 (xy)^s
    let tensor = (|| -> Result<bool, DmodError> {
        let u = parse_graded_element("x*dt^2 @ fs", &engine("x", window)?)?;
        let v = parse_graded_element("tinv^2 @ fs", &engine("y", window)?)?;
        let direct = parse_graded_element("x*dt^2 @ fs", &engine("x,y", window)?)?;
        Ok(tensor_element(&u, &v)? == direct)
    })();
    out.push(Check::new(
        "tensor_is_xdt^2_(xy)s",
        "x*dt^2 @ fs (x) tinv^2 @ fs",
        Source::Derived,
        format!("{tensor:?}"),
        matches!(tensor, Ok(true)),
    ));

    let b_uv = certified("x*dt^2 @ fs", "x,y", window);
    let s = sp("s");
    let s_s1 = sp("s^2 + s");
    let pass = b_uv.as_ref().is_ok_and(|b| s.divides(&b.poly) && b.poly.divides(&s_s1));
    out.push(Check::new("s_divides_b_xdt^2_(xy)s_divides_s(s+1)", "x*dt^2 @ fs; f = xy", Source::Paper, value_or_error(&b_uv), pass));
    out.push(equals("b_xdt^2_(xy)s_exact", "x*dt^2 @ fs; f = xy", Source::Derived, &b_uv, &sp(DERIVED_PRODUCT_EXAMPLE)));
    let product = sp("s^2 - 1");
    let pass = b_uv.as_ref().is_ok_and(|b| !b.poly.divides(&product) && !product.divides(&b.poly));
    let pass = pass && matches!((&b_u, &b_v), (Ok(a), Ok(b)) if &a.poly * &b.poly == product);
    out.push(Check::new("neither_divides_b_u_b_v", "b_xdt^2_(xy)s vs (s+1)(s-1)", Source::Paper, value_or_error(&b_uv), pass));

    for j in 0..=4i64 {
        let expr = if j == 0 { "x @ fs".to_string() } else { format!("x*dt^{j} @ fs") };
        let b = certified(&expr, "x,y", window);
        let bound = &sp("s + 1") * &Poly::from_ints(Var::S, &[2 - j, 1]);
        let pass = b.as_ref().is_ok_and(|b| b.poly.divides(&bound));
        let name = format!("b_xdt^{j}_(xy)s_divides_(s+1)(s{:+})", 2 - j);
        out.push(Check::new(&name, &format!("{expr}; f = xy"), Source::Paper, value_or_error(&b), pass));
    }
    out
}

/// Theorem check on every `x^n y^m` with `n <= nmax`, `m <= mmax`: the
/// product engine's `b` equals the product of the one-variable ones, and
/// its roots are the union of theirs.
pub fn verify_theorem_monomials(nmax: u32, mmax: u32, window: i64, exec: Execution) -> Vec<Check> {
    let pairs: Vec<(u32, u32)> = (1..=nmax).flat_map(|n| (1..=mmax).map(move |m| (n, m))).collect();
    let results = exec.map(pairs.len(), |k| {
        let (n, m) = pairs[k];
        let run = || -> Result<(BFunctionResult, BFunctionResult, BFunctionResult), DmodError> {
            let fg = bernstein_sato_monomial(&EngineConfig::pair(n, m).with_window(window)?)?;
            let f = bernstein_sato_monomial(&EngineConfig::single(n).with_window(window)?)?;
            let g = bernstein_sato_monomial(&EngineConfig::named(&[("y", m)]).with_window(window)?)?;
            Ok((fg, f, g))
        };
        (n, m, run())
    });
    let mut out = Vec::with_capacity(2 * results.len());
    for (n, m, r) in results {
        let inputs = format!("f = x^{n}, g = y^{m}");
        match r {
            Ok((fg, f, g)) => {
                let product = &f.poly * &g.poly;
                out.push(Check::new(
                    &format!("b_fg_equals_b_f_b_g_{n}_{m}"),
                    &inputs,
                    Source::Paper,
                    print_poly(&fg.poly),
                    fg.poly == product,
                ));
                let mut union: Vec<Rat> = f.roots.iter().chain(&g.roots).cloned().collect();
                union.sort();
                union.dedup();
                let mut zeros = fg.roots.clone();
                zeros.dedup();
                out.push(Check::new(
                    &format!("roots_b_fg_union_{n}_{m}"),
                    &inputs,
                    Source::Paper,
                    format!("{} distinct roots", zeros.len()),
                    zeros == union && fg.residual.is_one(),
                ));
            }
            Err(e) => out.push(Check::new(&format!("b_fg_equals_b_f_b_g_{n}_{m}"), &inputs, Source::Paper, format!("error: {e}"), false)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_suite_passes() {
        let checks = paper_example_suite(crate::dmod::DEFAULT_WINDOW);
        for c in &checks {
            println!("{c:?}");
        }
        assert!(checks.iter().all(|c| c.pass));
        let v = checks.iter().find(|c| c.check == "b_t^-2_ys").unwrap();
        assert_eq!(v.value, "s - 1");
    }

    #[test]
    fn theorem_on_small_monomials() {
        let checks = verify_theorem_monomials(3, 2, crate::dmod::DEFAULT_WINDOW, Execution::Sequential);
        assert_eq!(checks.len(), 12);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert_eq!(checks[0].value, "s^2 + 2*s + 1");
    }
}
