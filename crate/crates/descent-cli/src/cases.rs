//! Bundled case files, embedded at compile time.
//!
//! The same files live under `cases/` in the crate source, where they double
//! as format documentation; the embedded copies keep the selftest material
//! and the integration tests independent of the working directory.

/// (case id, JSON text) for every bundled case, sorted by id.
pub const BUNDLED: [(&str, &str); 17] = [
    ("amitsur_h1_f2_f4", include_str!("../cases/amitsur_h1_f2_f4.json")),
    ("amitsur_h1_f3_f9", include_str!("../cases/amitsur_h1_f3_f9.json")),
    ("amitsur_h1_z2_diag", include_str!("../cases/amitsur_h1_z2_diag.json")),
    ("brb_f2_f4", include_str!("../cases/brb_f2_f4.json")),
    ("dual_f2_f4", include_str!("../cases/dual_f2_f4.json")),
    ("dual_z2_diag", include_str!("../cases/dual_z2_diag.json")),
    ("hilbert90_n2_f2", include_str!("../cases/hilbert90_n2_f2.json")),
    ("hilbert90_n3_f3", include_str!("../cases/hilbert90_n3_f3.json")),
    ("inv_f2_f4", include_str!("../cases/inv_f2_f4.json")),
    ("inv_id_f4", include_str!("../cases/inv_id_f4.json")),
    ("inv_z2_diag", include_str!("../cases/inv_z2_diag.json")),
    ("pic_f2_f4", include_str!("../cases/pic_f2_f4.json")),
    ("pic_f3_f9", include_str!("../cases/pic_f3_f9.json")),
    ("pic_z2_diag", include_str!("../cases/pic_z2_diag.json")),
    ("seq5_f2_f4", include_str!("../cases/seq5_f2_f4.json")),
    ("seq5_f3_f9", include_str!("../cases/seq5_f3_f9.json")),
    ("seq5_z2_z2xz2", include_str!("../cases/seq5_z2_z2xz2.json")),
];

/// Looks up a bundled case by id.
pub fn bundled(id: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| *text)
}
