//! Regenerates the bundled textures: `cargo run -p dfc-core --example gen_assets`.

use std::path::Path;

use dfc_core::io::write_png;
use dfc_core::scenes::{bundled_texture, BUNDLED_NAMES};

fn main() -> dfc_core::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets");
    std::fs::create_dir_all(&dir)?;
    for (i, name) in BUNDLED_NAMES.iter().enumerate() {
        let path = dir.join(format!("{name}.png"));
        write_png(&path, &bundled_texture(i)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
