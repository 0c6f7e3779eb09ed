//! Sizes of the double cosets U sigma U in M_2(F_3), formula against literal count.

use framed_rook::coset::coset_report;

fn main() -> framed_rook::Result<()> {
    let (records, report) = coset_report(2, 3)?;
    println!("{:<12} {:>4} {:>6} {:>5} {:>7}", "sigma", "rank", "length", "size", "literal");
    for r in &records {
        println!(
            "{:<12} {:>4} {:>6} {:>5} {:>7}",
            r.representative,
            r.rank,
            r.length,
            r.size,
            r.literal_size.as_deref().unwrap_or("-")
        );
    }
    println!("{report}");
    Ok(())
}
