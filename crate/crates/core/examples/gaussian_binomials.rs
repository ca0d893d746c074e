//! Gaussian binomials and q-Pochhammer symbols as exact rationals.
//!
//!     cargo run --example gaussian_binomials -- 3

use qsteiner::exactq::{fraction_string, gauss_binom, q_pochhammer, v_q, QExponent};

fn main() {
    let q: u64 = std::env::args().nth(1).map_or(2, |s| s.parse().expect("q"));
    println!("[n k]_{q} for 0 <= k <= n <= 6:");
    for n in 0..=6 {
        let row: Vec<String> = (0..=n).map(|k| fraction_string(&gauss_binom(n, k, q))).collect();
        println!("  n={n}: {}", row.join(" "));
    }
    println!("negative upper index, [-n 2]_{q}:");
    for n in 1..=4 {
        println!("  [-{n} 2] = {}", fraction_string(&gauss_binom(-n, 2, q)));
    }
    println!("(q^-3; q)_n terminates after n = 4:");
    for n in 0..=5 {
        println!("  n={n}: {}", fraction_string(&q_pochhammer(QExponent(-3), n, q)));
    }
    let big = gauss_binom(13, 3, q).to_integer();
    println!("[13 3]_{q} = {big}, v_q([13 3] - 1) = {}", v_q(&(&big - 1), q));
}
