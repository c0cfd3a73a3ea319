//! Even-order finite differences of the total Lah sums are non-negative.

use lah::sequence_props::{absolute_convexity_check, total_lah_sequence, DifferenceTable};

pub fn main() {
    let seq = total_lah_sequence(12).unwrap();
    let table = DifferenceTable::new(&seq).unwrap();
    for k in 0..=3 {
        let row: Vec<String> = (1..=12 - 2 * k).map(|n| table.get(2 * k, n).unwrap().to_string()).collect();
        println!("Δ^{} : {}", 2 * k, row.join(" "));
    }
    let wide = total_lah_sequence(25).unwrap();
    let violations = absolute_convexity_check(&wide, 25);
    println!("violations with n + 2k <= 25: {}", violations.len());
}
