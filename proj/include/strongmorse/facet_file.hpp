#ifndef STRONGMORSE_FACET_FILE_HPP
#define STRONGMORSE_FACET_FILE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strongmorse/complex.hpp"

namespace smorse {

enum class FacetFormat {
    /// `name:=[[1,2,3],[1,3,4]];` with optional name and semicolon.
    Bracket,
    /// One facet per line, whitespace separated, `#` starts a comment.
    Lines,
    /// A JSON array of integer arrays.
    Json,
};

std::string_view to_string(FacetFormat format);

struct FacetFile {
    std::optional<std::string> name;
    std::vector<std::vector<Label>> facets;
    FacetFormat format = FacetFormat::Bracket;

    /// Name and facets only; the format tag is provenance.
    friend bool operator==(const FacetFile& a, const FacetFile& b)
    {
        return a.name == b.name && a.facets == b.facets;
    }
};

/// Detects the format from the first significant character: `[` or a
/// name followed by `:=` / `=` selects the bracket grammar (tagged Json
/// when it is plain JSON), anything else is read as lines. Throws
/// SyntaxError (with position) or EmptyFile.
FacetFile parse_facet_file(std::string_view text);
FacetFile parse_facet_file(std::string_view text, FacetFormat format);

/// Writes `file` in `format`. Names are kept by the bracket format and
/// written as a leading comment by the lines format.
std::string serialize_facet_file(const FacetFile& file, FacetFormat format);
inline std::string serialize_facet_file(const FacetFile& file)
{
    return serialize_facet_file(file, file.format);
}

/// Throws InputNotFound, or ParseFailure wrapping the syntax error.
FacetFile read_facet_file(const std::filesystem::path& path);

SimplicialComplex to_complex(const FacetFile& file);
FacetFile to_facet_file(const SimplicialComplex& k, std::optional<std::string> name = std::nullopt);

} // namespace smorse

#endif
