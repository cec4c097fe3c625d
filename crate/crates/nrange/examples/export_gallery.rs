//! Writes every gallery matrix as a JSON matrix file.
//!
//! cargo run --example export_gallery -- crates/nrange/data

use std::path::PathBuf;

use nrange::cli_io::{parse_matrix, write_matrix};
use nrange::gallery;

fn main() -> nrange::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, m) in gallery::all() {
        let path = dir.join(format!("{}.json", name));
        write_matrix(&m, &path)?;
        assert_eq!(parse_matrix(&path)?, m);
        println!("{}", path.display());
    }
    Ok(())
}
