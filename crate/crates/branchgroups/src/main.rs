fn main() {
    std::process::exit(branchgroups::cli::run());
}
