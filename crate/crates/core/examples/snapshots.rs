//! Writes a walk state to a snapshot file and reads it back.

use nlqw::lab::{initial_field, ExperimentConfig, Preset};
use nlqw::spectral::{read_snapshot, write_snapshot, GridSpec};

fn main() -> nlqw::Result<()> {
    let cfg = ExperimentConfig::new(Preset::Free);
    let grid = GridSpec::with_length(cfg.length, 256)?;
    let u = initial_field(&cfg, grid);

    let path = std::env::temp_dir().join("nlqw_snapshot.dat");
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    write_snapshot(&u, &mut file)?;
    drop(file);

    let back = read_snapshot(std::io::BufReader::new(std::fs::File::open(&path)?))?;
    println!("{} points, spacing {}", back.grid().points(), back.grid().spacing());
    println!("max difference after round trip {:.1e}", back.max_site_distance(&u)?);
    Ok(())
}
