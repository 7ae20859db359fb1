fn main() { println!("qnet"); }
