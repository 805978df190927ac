fn main() {
    println!("taskloop");
}
