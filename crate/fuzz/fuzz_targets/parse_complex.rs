#![no_main]

use libfuzzer_sys::fuzz_target;
use mpcm::scalar::{format_complex, parse_complex_with_prec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // reject absurd literals that would only measure allocation speed
    if text.len() > 4096 {
        return;
    }
    if let Ok(z) = parse_complex_with_prec(text, 64) {
        if z.re.is_finite() && z.im.is_finite() {
            let printed = format_complex(&z, 30);
            parse_complex_with_prec(&printed, 64).expect("printed values parse");
        }
    }
});
