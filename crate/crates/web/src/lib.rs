//! WebAssembly bindings for the static demo page in `www/`.

use wasm_bindgen::prelude::*;

pub mod api;

#[wasm_bindgen(js_name = bTable)]
pub fn b_table(partition: &str) -> String {
    api::b_table(partition)
}

#[wasm_bindgen(js_name = genusTable)]
pub fn genus_table(genus: &str, q_coeffs: &str, dim: u32) -> String {
    api::genus_table(genus, q_coeffs, dim)
}

#[wasm_bindgen(js_name = checkChern)]
pub fn check_chern(dim: u32, chern: &str) -> String {
    api::check_chern(dim, chern)
}
