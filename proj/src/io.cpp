#include "wiener/io.hpp"

#include <fstream>
#include <sstream>

namespace wiener {

namespace {

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::vector<double> load_samples_csv(const std::filesystem::path& path, int expected_count) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open samples file: " + path.string());
    std::vector<double> out;
    std::string token;
    // values separated by commas and/or whitespace
    while (std::getline(in, token, ',')) {
        std::istringstream cell(token);
        double x;
        while (cell >> x) out.push_back(x);
    }
    if (static_cast<int>(out.size()) != expected_count) {
        throw ParseError(path.string() + ": expected " + std::to_string(expected_count) +
                         " values (one per grid node), found " + std::to_string(out.size()));
    }
    return out;
}

KernelLibrary load_kernel_file(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open kernel file: " + path.string());
    KernelLibrary lib{grid, {}};

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trimmed(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string verb;
        ls >> verb;
        if (verb == "family") {
            std::string name;
            ls >> name;
            if (name.empty()) {
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": family needs a name");
            }
            const Family fam = make_family(name, grid);  // RegistryError if unknown
            lib.kernels.insert_or_assign(name + ".h", fam.set.h);
            lib.kernels.insert_or_assign(name + ".k1", fam.set.k1);
            lib.kernels.insert_or_assign(name + ".k2", fam.set.k2);
            lib.kernels.insert_or_assign(name + ".s1", fam.set.s1);
            lib.kernels.insert_or_assign(name + ".s2", fam.set.s2);
        } else if (verb == "samples") {
            std::string rel;
            ls >> rel;
            if (rel.empty()) {
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": samples needs a csv path");
            }
            std::filesystem::path csv(rel);
            if (csv.is_relative()) csv = path.parent_path() / csv;
            std::vector<double> vals = load_samples_csv(csv, grid.node_count());
            lib.kernels.insert_or_assign(csv.stem().string(),
                                         KernelFn(grid, std::move(vals), csv.stem().string()));
        } else {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": unknown directive '" + verb + "'");
        }
    }
    return lib;
}

KernelFn resolve_kernel_ref(const std::string& ref, const KernelLibrary* lib,
                            const Grid& grid) {
    if (lib != nullptr) {
        const auto it = lib->kernels.find(ref);
        if (it != lib->kernels.end()) return it->second;
    }
    const auto dot = ref.find('.');
    if (dot != std::string::npos) {
        const std::string fam_name = ref.substr(0, dot);
        const std::string member = ref.substr(dot + 1);
        if (is_family_name(fam_name)) {
            const Family fam = make_family(fam_name, grid);
            if (member == "h") return fam.set.h;
            if (member == "k1") return fam.set.k1;
            if (member == "k2") return fam.set.k2;
            if (member == "s1") return fam.set.s1;
            if (member == "s2") return fam.set.s2;
        }
    }
    throw ParseError("unknown kernel reference: " + ref);
}

CylinderFunctional load_functional_file(const std::filesystem::path& path,
                                        const KernelLibrary* lib, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open functional file: " + path.string());
    std::vector<Atom> atoms;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trimmed(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string verb, ref;
        double re = 0.0, im = 0.0;
        ls >> verb >> re >> im >> ref;
        if (verb != "atom" || ls.fail() || ref.empty()) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 'atom <re> <im> <kernel-ref>'");
        }
        atoms.push_back({Complex(re, im), resolve_kernel_ref(ref, lib, grid)});
    }
    return CylinderFunctional(grid, std::move(atoms));
}

} // namespace wiener
