//! Regenerates the bundled `rings/`, `bimods/` and `cocycles/` directories
//! at the workspace root from the catalog.

use std::path::Path;

use crext_core::catalog;
use crext_core::cochain::{compute_h3, Method};
use crext_core::io;

fn main() -> crext_core::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    for dir in ["rings", "bimods", "cocycles"] {
        std::fs::create_dir_all(root.join(dir))?;
    }
    for name in catalog::RING_NAMES {
        let r = catalog::ring(name).unwrap();
        io::write_value(
            &root.join(format!("rings/{name}.json")),
            &io::ring_to_json(&r),
        )?;
        for (bname, b) in catalog::bimodules(name) {
            io::write_value(
                &root.join(format!("bimods/{bname}.json")),
                &io::bimodule_to_json(&b, &r),
            )?;
            if r.size() > 4 || b.group().order() > 4 {
                continue;
            }
            let res = compute_h3(&r, &b, Method::Snf)?;
            println!("{name} {bname}: H3 {:?}", res.h3);
            for (i, c) in res.representatives.iter().enumerate() {
                let path = root.join(format!("cocycles/{bname}-h3-{i}.json"));
                io::write_value(&path, &io::cochain3_to_json(c, &r, b.group()))?;
            }
        }
    }
    Ok(())
}
