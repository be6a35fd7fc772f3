//! The empirical companion table of the ratio bound: R_1, C_emp, and the
//! inequality margins over the default fixture suite, with the running
//! Korevaar envelope.
//!
//!     cargo run --release --example ratio_sweep

use specgeo::cli::default_sweep_rows;
use specgeo::eigen::EigenRequest;
use specgeo::inequality::k_g;
use specgeo::report::sweep_csv;

fn main() {
    let request = EigenRequest::default();
    let (rows, c_emp_max) = default_sweep_rows(1, &request).unwrap();

    print!("{}", sweep_csv(&rows));
    println!();
    println!(
        "running max C_emp = {c_emp_max:.6} (8 pi = {:.6})",
        8.0 * std::f64::consts::PI
    );
    println!("K_0(C_emp) = {:.6}", k_g(c_emp_max, 0));
    for row in &rows {
        if let Some(ratio) = row.ratio {
            let bound = k_g(c_emp_max, row.genus);
            println!(
                "  {:<9} genus {}: R_1 = {:>10.4} > K_g(C_emp) = {:.4}",
                row.fixture, row.genus, ratio, bound
            );
        }
    }
}
