//! The exact rational matrices behind the linear pieces `x' = Mx ± b`.
//!
//! ```bash
//! cargo run --example exact_data
//! ```

use pwproof::exact::{build_problem_data, rmat_mul, ProblemData};

fn show(name: &str, m: &pwproof::exact::RMat4) {
    println!("{name} =");
    for row in m {
        let cells: Vec<String> = row.iter().map(|q| format!("{q:>7}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

pub fn run_example() -> Result<(), pwproof::Error> {
    let data = build_problem_data()?;
    show("M", &data.m);
    show("M^-1", &data.m_inv);
    show("P", &data.p);
    show("P^-1", &data.p_inv);
    let lambda: Vec<String> = data.lambda.iter().map(|q| q.to_string()).collect();
    println!("lambda = ({})", lambda.join(", "));
    data.verify()?;
    println!("M M^-1 = I, P P^-1 = I, M P = P diag(lambda): verified exactly");
    println!("P^-1 P = I? {}", rmat_mul(&data.p_inv, &data.p) == pwproof::exact::ridentity());
    assert_eq!(&data, ProblemData::get());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), pwproof::Error> {
    run_example()
}
