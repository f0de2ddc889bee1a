use sticky_codes::channel::{self, ChannelSpec};
use sticky_codes::systematic::SystematicCode;
use sticky_codes::word::{self, BitWord};

fn main() {
    let spec = ChannelSpec::new(1, 2);
    let code = SystematicCode::new(8, spec).unwrap();
    println!("{:#?}", code.params());
    'outer: for idx in 0..(1u64 << 8) {
        let msg = BitWord::from_index(idx, 8);
        let encoded = code.encode(&msg).unwrap();
        for e in channel::enumerate_patterns(&encoded, spec) {
            let received = channel::apply(&encoded, &e, spec).unwrap();
            match code.decode(&received) {
                Ok(out) if out == msg => {}
                res => {
                    println!("msg      = {msg}");
                    println!("pattern  = {:?}", e.magnitudes());
                    println!("encoded  = {encoded}");
                    println!("received = {received}");
                    println!("deriv(e) = {}", word::derivative(&encoded).unwrap());
                    println!("deriv(r) = {}", word::derivative(&received).unwrap());
                    println!("result   = {res:?}");
                    break 'outer;
                }
            }
        }
    }
}
