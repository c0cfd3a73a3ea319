//! Prints the first rows of the Lah triangle, checked against brute-force
//! enumeration of ordered partitions.

use lah::exact_core::{lah_enumeration_oracle, LahTable};

pub fn main() {
    let table = LahTable::new(8).expect("n_max >= 1");
    for (n, row) in table.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("n = {n}: {}  (total {})", cells.join(" "), table.total(n).unwrap());
    }
    for n in 1..=6 {
        for k in 1..=n {
            assert_eq!(table.get(n, k), Some(&lah_enumeration_oracle(n, k).unwrap()));
        }
    }
    println!("rows 1..=6 agree with enumeration");
    println!("L(30, 1) = {}", lah::lah(30, 1).unwrap());
}
