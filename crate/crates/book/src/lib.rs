//! Compiles and runs the code listings of the guide in `book/` as
//! doc-tests, so the book cannot drift from the library.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(posets_and_lattices, "posets-and-lattices.md");
chapter!(faigle_geometries, "faigle-geometries.md");
chapter!(congruences, "congruences.md");
chapter!(geometric_extension, "geometric-extension.md");
chapter!(rectangular_extension, "rectangular-extension.md");
chapter!(testkit, "testkit.md");
chapter!(cli, "cli.md");
