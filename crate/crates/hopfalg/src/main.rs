fn main() {
    // CLI wired up after the library layers are in place.
}
