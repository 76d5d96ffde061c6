#include "strongmorse/facet_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "strongmorse/error.hpp"

namespace smorse {

std::string_view to_string(FacetFormat format)
{
    switch (format) {
    case FacetFormat::Bracket: return "bracket";
    case FacetFormat::Lines: return "lines";
    case FacetFormat::Json: return "json";
    }
    return "unknown";
}

namespace {

bool is_name_char(char c)
{
    return !std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']' && c != '=' &&
           c != ':' && c != ',' && c != ';';
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (!done() && std::isspace(static_cast<unsigned char>(peek())))
            advance();
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(line_, col_, what); }

    std::string describe() const
    {
        if (done())
            return "end of input";
        return std::string("'") + peek() + "'";
    }

    void expect(char c)
    {
        if (peek() != c || done())
            fail(std::string("expected '") + c + "', found " + describe());
        advance();
    }

    Label integer()
    {
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+')
            advance();
        while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
            advance();
        std::string_view tok = text_.substr(start, pos_ - start);
        if (!tok.empty() && tok.front() == '+')
            tok.remove_prefix(1);
        Label value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            col_ -= pos_ - start;
            pos_ = start;
            if (ec == std::errc::result_out_of_range)
                fail("integer label out of range");
            fail("expected an integer label, found " + describe());
        }
        return value;
    }

    std::string_view rest() const { return text_.substr(pos_); }
    std::size_t pos() const { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

std::vector<Label> parse_bracket_facet(Cursor& c)
{
    const std::size_t open_line = c.line(), open_col = c.column();
    c.expect('[');
    std::vector<Label> facet;
    c.skip_space();
    if (c.peek() != ']') {
        for (;;) {
            c.skip_space();
            facet.push_back(c.integer());
            c.skip_space();
            if (c.peek() == ',') {
                c.advance();
                continue;
            }
            break;
        }
    }
    if (c.peek() != ']')
        c.fail("expected ',' or ']' closing the facet opened at line " + std::to_string(open_line) +
               ", column " + std::to_string(open_col) + ", found " + c.describe());
    c.advance();
    return facet;
}

FacetFile parse_bracket(std::string_view text)
{
    Cursor c(text);
    FacetFile file;
    file.format = FacetFormat::Bracket;
    c.skip_space();
    if (c.done())
        throw Error(ErrorCode::EmptyFile, "input contains no facets");
    if (c.peek() != '[') {
        std::string name;
        while (!c.done() && is_name_char(c.peek())) {
            name += c.peek();
            c.advance();
        }
        if (name.empty())
            c.fail("expected a name or '[', found " + c.describe());
        c.skip_space();
        if (c.peek() == ':')
            c.advance();
        c.expect('=');
        c.skip_space();
        file.name = std::move(name);
    }
    const std::size_t open_line = c.line(), open_col = c.column();
    c.expect('[');
    c.skip_space();
    if (c.peek() != ']') {
        for (;;) {
            c.skip_space();
            file.facets.push_back(parse_bracket_facet(c));
            c.skip_space();
            if (c.peek() == ',') {
                c.advance();
                continue;
            }
            break;
        }
    }
    if (c.peek() != ']')
        c.fail("expected ',' or ']' closing the facet list opened at line " +
               std::to_string(open_line) + ", column " + std::to_string(open_col) + ", found " +
               c.describe());
    c.advance();
    c.skip_space();
    bool semicolon = false;
    if (c.peek() == ';') {
        semicolon = true;
        c.advance();
        c.skip_space();
    }
    if (!c.done())
        c.fail("unexpected " + c.describe() + " after the facet list");
    if (!file.name && !semicolon)
        file.format = FacetFormat::Json;
    if (file.facets.empty())
        throw Error(ErrorCode::EmptyFile, "input contains no facets");
    return file;
}

FacetFile parse_lines(std::string_view text)
{
    FacetFile file;
    file.format = FacetFormat::Lines;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<Label> facet;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            std::string_view tok = line.substr(i, j - i);
            std::string_view digits = tok.front() == '+' ? tok.substr(1) : tok;
            Label value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
                throw SyntaxError(line_no, i + 1,
                                  "expected an integer label, found '" + std::string(tok) + "'");
            facet.push_back(value);
            i = j;
        }
        if (!facet.empty())
            file.facets.push_back(std::move(facet));
        if (end == text.size())
            break;
        start = end + 1;
    }
    if (file.facets.empty())
        throw Error(ErrorCode::EmptyFile, "input contains no facets");
    return file;
}

} // namespace

FacetFile parse_facet_file(std::string_view text, FacetFormat format)
{
    switch (format) {
    case FacetFormat::Lines: return parse_lines(text);
    case FacetFormat::Bracket:
    case FacetFormat::Json: {
        auto f = parse_bracket(text);
        if (format == FacetFormat::Json && f.format != FacetFormat::Json)
            throw SyntaxError(1, 1, "not a plain JSON array of facets");
        return f;
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown facet format");
}

FacetFile parse_facet_file(std::string_view text)
{
    // Skip whitespace and full-line comments to find the first token.
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        } else if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
        } else {
            break;
        }
    }
    if (i == text.size())
        throw Error(ErrorCode::EmptyFile, "input contains no facets");
    if (text[i] == '[')
        return parse_bracket(text);
    std::size_t j = i;
    while (j < text.size() && is_name_char(text[j]))
        ++j;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t'))
        ++j;
    if (j < text.size() && (text[j] == ':' || text[j] == '='))
        return parse_bracket(text);
    return parse_lines(text);
}

std::string serialize_facet_file(const FacetFile& file, FacetFormat format)
{
    std::ostringstream out;
    auto bracket_list = [&] {
        out << '[';
        for (std::size_t i = 0; i < file.facets.size(); ++i) {
            out << (i ? "," : "") << '[';
            for (std::size_t j = 0; j < file.facets[i].size(); ++j)
                out << (j ? "," : "") << file.facets[i][j];
            out << ']';
        }
        out << ']';
    };
    switch (format) {
    case FacetFormat::Bracket:
        if (file.name)
            out << *file.name << ":=";
        bracket_list();
        out << ";\n";
        break;
    case FacetFormat::Json:
        bracket_list();
        out << '\n';
        break;
    case FacetFormat::Lines:
        if (file.name)
            out << "# " << *file.name << '\n';
        for (const auto& f : file.facets) {
            for (std::size_t j = 0; j < f.size(); ++j)
                out << (j ? " " : "") << f[j];
            out << '\n';
        }
        break;
    }
    return out.str();
}

FacetFile read_facet_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InputNotFound, "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_facet_file(buf.str());
    } catch (const SyntaxError& e) {
        throw Error(ErrorCode::ParseFailure, path.string() + ": " + e.what());
    }
}

SimplicialComplex to_complex(const FacetFile& file)
{
    return SimplicialComplex::from_facets(file.facets);
}

FacetFile to_facet_file(const SimplicialComplex& k, std::optional<std::string> name)
{
    FacetFile f;
    f.name = std::move(name);
    f.facets = k.facet_labels();
    return f;
}

} // namespace smorse
