#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "wiener/families.hpp"
#include "wiener/functional.hpp"

namespace wiener {

/// Raised for malformed kernel/functional definition files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Named kernels loaded from a kernel definition file.
struct KernelLibrary {
    Grid grid;
    std::map<std::string, KernelFn> kernels;
};

/// Kernel definition file, line oriented:
///   family <name>          registers <name>.h, <name>.k1, <name>.k2,
///                          <name>.s1, <name>.s2
///   samples <csv-path>     one real per grid node; kernel named by the
///                          csv file stem; path relative to the file
/// Blank lines and lines starting with '#' are ignored.
KernelLibrary load_kernel_file(const std::filesystem::path& path, const Grid& grid);

/// Resolves `<family>.<member>` against the built-in registry, or a name
/// against `lib` when given (file-defined names win).
KernelFn resolve_kernel_ref(const std::string& ref, const KernelLibrary* lib,
                            const Grid& grid);

/// Functional definition file: one `atom <re> <im> <kernel-ref>` per line.
CylinderFunctional load_functional_file(const std::filesystem::path& path,
                                        const KernelLibrary* lib, const Grid& grid);

std::vector<double> load_samples_csv(const std::filesystem::path& path, int expected_count);

} // namespace wiener
