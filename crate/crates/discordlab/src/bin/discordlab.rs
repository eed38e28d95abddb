fn main() {
    std::process::exit(discordlab::cli::run());
}
