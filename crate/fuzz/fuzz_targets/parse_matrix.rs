#![no_main]

use libfuzzer_sys::fuzz_target;
use mpcm::matrix::parse_matrix_with_prec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if text.len() <= 4096 {
            if let Ok(m) = parse_matrix_with_prec(text, 64) {
                assert_eq!(m.as_slice().len(), m.rows() * m.cols());
            }
        }
    }
});
