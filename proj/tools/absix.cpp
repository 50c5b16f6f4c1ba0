// absix: command-line front end.
//
//   absix validate <file>
//   absix compute <file|@name[:k=v,...]> --what ... --format text|json [--degree n]
//   absix corpus [--export DIR]
//
// Exit codes: 0 ok, 1 domain error (invalid atlas, failed precondition),
// 2 I/O or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include <absix/absix.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_io = 2;

struct Source
{
    absix::StratumAtlas atlas;
    std::string name;
};

Source load_source(const std::string& ref)
{
    if (!ref.empty() && ref[0] == '@')
    {
        const auto [name, params] = absix::parse_corpus_ref(ref.substr(1));
        return {absix::builtin(name, params), ref.substr(1)};
    }
    if (!std::filesystem::exists(ref))
        throw absix::ParseError(ref + ": no such file");
    return {absix::load_atlas_file(ref), std::filesystem::path(ref).stem().stem().string()};
}

int cmd_validate(const std::string& ref)
{
    const Source src = load_source(ref);
    const auto rep = absix::validate_atlas(src.atlas);
    for (const auto& f : rep.findings)
        std::cout << f.str() << "\n";
    if (!rep.valid())
        return exit_domain;
    std::cout << "valid: " << src.name << " (d = " << src.atlas.dimension << ", "
              << src.atlas.components.size() << " components, " << src.atlas.strata.size()
              << " strata)\n";
    return exit_ok;
}

int cmd_compute(const std::string& ref, const std::string& what, const std::string& format,
                std::optional<int> degree)
{
    const Source src = load_source(ref);
    const auto part = absix::parse_report_part(what);
    const auto report = absix::build_report(src.atlas, src.name, *part, degree);
    if (format == "json")
        std::cout << absix::report_json(report).dump(2) << "\n";
    else
        std::cout << absix::report_text(report);
    return exit_ok;
}

int cmd_corpus(const std::string& export_dir)
{
    for (const auto& e : absix::corpus_list())
    {
        std::string head = e.name + (e.params.empty() ? "" : "(" + e.params + ")");
        head.resize(std::max<std::size_t>(head.size() + 1, 34), ' ');
        std::cout << head << e.description << "\n";
    }
    for (const auto& [alias, target] : absix::corpus_aliases())
    {
        std::string head = alias;
        head.resize(std::max<std::size_t>(head.size() + 1, 34), ' ');
        std::cout << head << "alias of " << target << "\n";
    }
    if (export_dir.empty())
        return exit_ok;

    std::filesystem::create_directories(export_dir);
    auto write = [&](const std::string& file, const absix::StratumAtlas& a) {
        const auto path = std::filesystem::path(export_dir) / (file + ".atlas.json");
        std::ofstream out(path);
        if (!out)
            throw absix::ParseError(path.string() + ": cannot write");
        out << absix::dump_atlas(a).dump(2) << "\n";
    };
    for (const auto& e : absix::corpus_list())
        write(e.name, absix::builtin(e.name));
    for (const auto& [alias, target] : absix::corpus_aliases())
        write(alias, absix::builtin(alias));
    return exit_ok;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Absolute intersection cohomology from normal-crossing compactifications"};
    app.require_subcommand(1);
    app.set_version_flag("--version", absix::engine_version);

    std::string ref;
    auto* validate = app.add_subcommand("validate", "Check an atlas file and list every finding");
    validate->add_option("atlas", ref, "Atlas file or @corpusname")->required();

    std::string what = "all", format = "text";
    std::optional<int> degree;
    auto* compute = app.add_subcommand("compute", "Compute tables for an atlas");
    compute->add_option("atlas", ref, "Atlas file or @corpusname[:k=v,...]")->required();
    compute->add_option("--what", what, "Which part of the report")
        ->check(CLI::IsMember({"cohomology", "absic", "boundary", "ihplus", "criteria", "all"}));
    compute->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    compute->add_option("--degree", degree, "Restrict tables to one degree");

    std::string export_dir;
    auto* corpus = app.add_subcommand("corpus", "List the built-in atlases");
    corpus->add_option("--export", export_dir, "Write every corpus atlas as NAME.atlas.json into DIR");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_io;
    }

    try
    {
        if (validate->parsed())
            return cmd_validate(ref);
        if (compute->parsed())
            return cmd_compute(ref, what, format, degree);
        return cmd_corpus(export_dir);
    }
    catch (const absix::UnknownCorpusItem& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const absix::ParseError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const absix::Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    catch (const std::filesystem::filesystem_error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
}
