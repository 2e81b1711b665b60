#include <nestord/family.hpp>

#include <nestord/errors.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

namespace nestord {

auto elements_of(Mask a) -> std::vector<Element>
{
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(cardinality(a)));
    for (; a != 0; a &= a - 1)
        out.push_back(std::countr_zero(a) + 1);
    return out;
}

auto identity_relabeling(int m) -> Relabeling
{
    Relabeling r(static_cast<std::size_t>(m));
    std::iota(r.begin(), r.end(), 1);
    return r;
}

auto relabel_mask(Mask a, const Relabeling & relabeling) -> Mask
{
    Mask out = 0;
    for (; a != 0; a &= a - 1)
        out |= bit(relabeling[static_cast<std::size_t>(std::countr_zero(a))]);
    return out;
}

auto compress_mask(Mask a, Mask onto) -> Mask
{
    Mask out = 0;
    int position = 0;
    for (Mask rest = onto; rest != 0; rest &= rest - 1, ++position)
        if ((a & rest & -rest) != 0)
            out |= Mask{1} << position;
    return out;
}

auto expand_mask(Mask a, Mask onto) -> Mask
{
    Mask out = 0;
    int position = 0;
    for (Mask rest = onto; rest != 0; rest &= rest - 1, ++position)
        if ((a >> position & 1U) != 0)
            out |= rest & -rest;
    return out;
}

Family::Family(int ground_size, std::vector<Mask> sets) : ground_size_(ground_size), sets_(std::move(sets))
{
    if (ground_size < 0 || ground_size > max_ground_size)
        throw PreconditionError("ground size " + std::to_string(ground_size) + " outside 0.." +
                                std::to_string(max_ground_size));
    const Mask ground = full_mask(ground_size);
    for (Mask a : sets_)
        if (!is_subset(a, ground))
            throw PreconditionError("member leaves the ground set {1.." + std::to_string(ground_size) + "}");
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

auto Family::contains(Mask a) const -> bool { return std::binary_search(sets_.begin(), sets_.end(), a); }

auto Family::bitmap() const -> std::uint64_t
{
    std::uint64_t out = 0;
    for (Mask a : sets_)
        if (a < 64)
            out |= std::uint64_t{1} << a;
    return out;
}

auto Family::from_bitmap(int ground_size, std::uint64_t bitmap) -> Family
{
    std::vector<Mask> sets;
    for (; bitmap != 0; bitmap &= bitmap - 1)
        sets.push_back(static_cast<Mask>(std::countr_zero(bitmap)));
    return Family(ground_size, std::move(sets));
}

namespace {

class FamilyParser {
  public:
    explicit FamilyParser(std::string_view text) : text_(text) {}

    auto parse() -> Family
    {
        skip_space();
        std::optional<int> declared;
        if (at_digit()) {
            const std::size_t save = pos_;
            const std::size_t start = pos_;
            const long value = read_integer();
            skip_space();
            if (peek() == ':') {
                ++pos_;
                if (value > max_ground_size)
                    throw ParseError("declared ground size exceeds " + std::to_string(max_ground_size), start);
                declared = static_cast<int>(value);
            }
            else {
                pos_ = save;
            }
        }

        std::vector<Mask> sets;
        int largest = 0;
        std::optional<std::size_t> digit_form_at;
        skip_space();
        if (!(declared && at_end())) {
            for (;;) {
                skip_space();
                sets.push_back(parse_set(declared, largest, digit_form_at));
                skip_space();
                if (at_end())
                    break;
                if (peek() != ',')
                    throw ParseError("expected ',' between sets", pos_);
                ++pos_;
            }
        }
        const int m = declared.value_or(largest);
        if (digit_form_at && m > 9)
            throw ParseError("digit form needs a ground of at most 9 elements; use {..}", *digit_form_at);
        return Family(m, std::move(sets));
    }

  private:
    auto parse_set(std::optional<int> declared, int & largest, std::optional<std::size_t> & digit_form_at) -> Mask
    {
        const std::size_t start = pos_;
        Mask set = 0;
        if (peek() == '{') {
            ++pos_;
            for (;;) {
                skip_space();
                if (!at_digit())
                    throw ParseError("expected an element", pos_);
                const std::size_t at = pos_;
                set |= element_bit(read_integer(), at, declared, largest);
                skip_space();
                if (peek() == '}') {
                    ++pos_;
                    break;
                }
                if (peek() != ',')
                    throw ParseError("expected ',' or '}'", pos_);
                ++pos_;
            }
            return set;
        }
        if (!at_digit())
            throw ParseError(at_end() ? "unexpected end of input" : "expected a set", pos_);
        while (at_digit()) {
            const std::size_t at = pos_;
            const int digit = text_[pos_++] - '0';
            if (digit == 0) {
                if (at == start && !at_digit())
                    return 0;
                throw ParseError("element 0 is only valid as the empty-set token", at);
            }
            set |= element_bit(digit, at, declared, largest);
        }
        if (!digit_form_at)
            digit_form_at = start;
        return set;
    }

    auto element_bit(long value, std::size_t at, std::optional<int> declared, int & largest) -> Mask
    {
        if (value == 0)
            throw ParseError("element 0 is only valid as the empty-set token", at);
        if (value > max_ground_size)
            throw ParseError("element exceeds the maximum ground size " + std::to_string(max_ground_size), at);
        if (declared && value > *declared)
            throw ParseError("element " + std::to_string(value) + " exceeds the declared ground", at);
        largest = std::max(largest, static_cast<int>(value));
        return bit(static_cast<Element>(value));
    }

    auto read_integer() -> long
    {
        const std::size_t start = pos_;
        while (at_digit())
            ++pos_;
        long value = 0;
        const auto result = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (result.ec != std::errc{} || pos_ - start > 6)
            throw ParseError("integer out of range", start);
        return value;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0)
            ++pos_;
    }

    [[nodiscard]] auto at_end() const -> bool { return pos_ >= text_.size(); }
    [[nodiscard]] auto peek() const -> char { return at_end() ? '\0' : text_[pos_]; }
    [[nodiscard]] auto at_digit() const -> bool { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

auto parse_family(std::string_view text) -> Family { return FamilyParser(text).parse(); }

auto format_family(const Family & f) -> std::string
{
    std::string out = std::to_string(f.ground_size()) + ":";
    const bool digits = f.ground_size() <= 9;
    bool first = true;
    for (Mask a : f.sets()) {
        out += first ? " " : ",";
        first = false;
        if (a == 0) {
            out += '0';
            continue;
        }
        if (!digits)
            out += '{';
        bool first_element = true;
        for (Element e : elements_of(a)) {
            if (!digits && !first_element)
                out += ',';
            first_element = false;
            out += std::to_string(e);
        }
        if (!digits)
            out += '}';
    }
    return out;
}

auto is_chain(const Family & f) -> bool
{
    // Sorted by numeric value, so a chain is also sorted by inclusion.
    const auto sets = f.sets();
    for (std::size_t i = 1; i < sets.size(); ++i)
        if (!is_subset(sets[i - 1], sets[i]))
            return false;
    return true;
}

auto is_within_ground_singleton(const Family & f) -> bool
{
    return f.empty() || (f.size() == 1 && f.sets()[0] == f.ground_mask());
}

auto is_subfamily(const Family & a, const Family & b) -> bool
{
    return a.ground_size() == b.ground_size() &&
           std::includes(b.sets().begin(), b.sets().end(), a.sets().begin(), a.sets().end());
}

auto intersection_closure(const Family & f) -> Family
{
    const int m = f.ground_size();
    std::vector<char> present(std::size_t{1} << m, 0);
    std::vector<Mask> closed{f.ground_mask()};
    present[f.ground_mask()] = 1;
    for (Mask b : f.sets()) {
        const std::size_t current = closed.size();
        for (std::size_t i = 0; i < current; ++i) {
            const Mask c = b & closed[i];
            if (present[c] == 0) {
                present[c] = 1;
                closed.push_back(c);
            }
        }
    }
    return Family(m, std::move(closed));
}

auto is_intersection_closed(const Family & f) -> bool { return intersection_closure(f) == f; }

auto restrict_family(const Family & f, Mask y) -> Family
{
    std::vector<Mask> sets;
    sets.reserve(f.size());
    for (Mask a : f.sets())
        sets.push_back(compress_mask(a, y));
    return Family(cardinality(y & f.ground_mask()), std::move(sets));
}

auto link_family(const Family & f, Mask a_set, Element a) -> Family
{
    const Mask rest = a_set & ~bit(a);
    std::vector<Mask> sets;
    for (Mask b : f.sets())
        if ((b & bit(a)) != 0)
            sets.push_back(compress_mask(b, rest));
    return Family(cardinality(rest), std::move(sets));
}

auto relabel(const Family & f, const Relabeling & relabeling) -> Family
{
    std::vector<Mask> sets;
    sets.reserve(f.size());
    for (Mask a : f.sets())
        sets.push_back(relabel_mask(a, relabeling));
    return Family(f.ground_size(), std::move(sets));
}

auto canonicalize(const Family & f) -> CanonicalForm
{
    const int m = f.ground_size();
    if (m > max_canonical_ground_size)
        throw ResourceGuardError("canonical form limited to ground sets of at most " +
                                 std::to_string(max_canonical_ground_size) + " elements");

    Relabeling perm = identity_relabeling(m);
    std::vector<Mask> best(f.sets().begin(), f.sets().end());
    Relabeling best_perm = perm;
    std::vector<Mask> candidate(best.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t i = 0; i < candidate.size(); ++i)
            candidate[i] = relabel_mask(f.sets()[i], perm);
        std::sort(candidate.begin(), candidate.end());
        if (std::lexicographical_compare(candidate.begin(), candidate.end(), best.begin(), best.end())) {
            best.swap(candidate);
            best_perm = perm;
        }
    }
    return {Family(m, std::move(best)), std::move(best_perm)};
}

auto serialize_key(const Family & f) -> std::string
{
    std::string out = std::to_string(f.ground_size()) + "|";
    static constexpr char hex[] = "0123456789abcdef";
    bool first = true;
    for (Mask a : f.sets()) {
        if (!first)
            out += '.';
        first = false;
        char buffer[8];
        int n = 0;
        do {
            buffer[n++] = hex[a & 0xFU];
            a >>= 4;
        } while (a != 0);
        while (n > 0)
            out += buffer[--n];
    }
    return out;
}

auto canonical_key(const Family & f) -> std::string { return serialize_key(canonicalize(f).family); }

auto parse_key(std::string_view key) -> Family
{
    const auto bar = key.find('|');
    if (bar == std::string_view::npos)
        throw ParseError("key lacks '|'", 0);
    int m = 0;
    if (std::from_chars(key.data(), key.data() + bar, m).ec != std::errc{} || m < 0 || m > max_ground_size)
        throw ParseError("bad ground size in key", 0);
    std::vector<Mask> sets;
    std::size_t pos = bar + 1;
    while (pos < key.size()) {
        std::size_t end = key.find('.', pos);
        if (end == std::string_view::npos)
            end = key.size();
        Mask a = 0;
        const auto result = std::from_chars(key.data() + pos, key.data() + end, a, 16);
        if (result.ec != std::errc{} || result.ptr != key.data() + end)
            throw ParseError("bad member in key", pos);
        if (!is_subset(a, full_mask(m)))
            throw ParseError("member outside ground in key", pos);
        sets.push_back(a);
        pos = end + 1;
    }
    return Family(m, std::move(sets));
}

auto augment(const Family & f) -> Family
{
    std::vector<Mask> sets(f.sets().begin(), f.sets().end());
    sets.push_back(f.ground_mask());
    for (Element x = 1; x <= f.ground_size(); ++x)
        sets.push_back(bit(x));
    return Family(f.ground_size(), std::move(sets));
}

namespace families {

auto full_cube(int m) -> Family
{
    std::vector<Mask> sets(std::size_t{1} << m);
    std::iota(sets.begin(), sets.end(), Mask{0});
    return Family(m, std::move(sets));
}

auto intervals(int m) -> Family
{
    std::vector<Mask> sets{0};
    for (Element i = 1; i <= m; ++i)
        for (Element j = i; j <= m; ++j)
            sets.push_back(full_mask(j) & ~full_mask(i - 1));
    return Family(m, std::move(sets));
}

auto uniform(int m, int size) -> Family
{
    std::vector<Mask> sets;
    for (Mask a = 0; a <= full_mask(m); ++a)
        if (cardinality(a) == size)
            sets.push_back(a);
    return Family(m, std::move(sets));
}

auto problem2() -> Family { return parse_family("6: 12,23,34,35,56,123,235,356,2356"); }

} // namespace families

} // namespace nestord
