//! Outward-rounded interval arithmetic and the certified exponential.
//!
//! ```bash
//! cargo run --example interval_basics
//! ```

use pwproof::{Interval, IntervalError};

pub fn run_example() -> Result<(), IntervalError> {
    let tenth = Interval::point(0.1);
    let sum = (0..10).fold(Interval::ZERO, |acc, _| acc + tenth);
    println!("0.1 added ten times = {sum}");
    println!("  contains 1? {}   width = {:e}", sum.contains(1.0), sum.width());

    let third = Interval::ONE.checked_div(Interval::point(3.0))?;
    println!("1/3 = {third}, degenerate? {}", third.is_degenerate());

    let x = Interval::new(-0.5, 2.0)?;
    println!("x = {x}, x*x = {}, sqr(x) = {}", x * x, x.sqr()?);

    let e = Interval::ONE.exp()?;
    println!("e in {e}  ({} ulps wide)", ulps(e));
    let e20 = Interval::point(-20.0 * 1.418316134968973).exp()?;
    println!("e^(-20 L) in {e20}");

    match Interval::ONE.checked_div(Interval::new(-1.0, 1.0)?) {
        Err(err) => println!("1/[-1, 1] -> {err}"),
        Ok(v) => println!("unexpected {v}"),
    }
    match Interval::point(100.0).exp() {
        Err(err) => println!("exp(100) -> {err}"),
        Ok(v) => println!("unexpected {v}"),
    }
    Ok(())
}

fn ulps(x: Interval) -> u64 {
    x.hi().to_bits() - x.lo().to_bits()
}

#[allow(dead_code)]
fn main() -> Result<(), IntervalError> {
    run_example()
}
