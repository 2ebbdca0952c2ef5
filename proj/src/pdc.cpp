#include "depthlab/pdc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "text_util.hpp"

namespace depthlab {

namespace {

int top_index(char top)
{
    switch (top) {
    case '0': return 0;
    case '1': return 1;
    case kBottom: return 2;
    }
    throw std::invalid_argument(std::string("pdc: bad stack symbol '") + top + "'");
}

constexpr char kTops[3] = {'0', '1', kBottom};
constexpr PdcInput kInputs[3] = {PdcInput::zero, PdcInput::one, PdcInput::lambda};

const char* input_name(PdcInput in)
{
    switch (in) {
    case PdcInput::zero: return "0";
    case PdcInput::one: return "1";
    case PdcInput::lambda: return "-";
    }
    return "?";
}

std::string key_name(StateId q, PdcInput in, char top)
{
    return "(" + std::to_string(q + 1) + ", " + input_name(in) + ", " + top + ")";
}

}  // namespace

PdcSpec::PdcSpec(std::size_t num_states, StateId start, StackKind kind, std::size_t lambda_budget)
    : start_(start), kind_(kind), lambda_budget_(lambda_budget), table_(num_states)
{
    if (num_states == 0) throw SpecError("pdc: at least one state required");
    if (start >= num_states) throw SpecError("pdc: start state out of range");
}

PdcSpec PdcSpec::identity(StackKind kind)
{
    PdcSpec c(1, 0, kind, 0);
    for (char top : c.alphabet())
        for (int b = 0; b < 2; ++b) c.set(0, input_of_bit(b), top, PdcMove{0, std::string(1, top), BitString(1, bit_char(b))});
    return c;
}

PdcSpec PdcSpec::silent(StackKind kind)
{
    PdcSpec c(1, 0, kind, 0);
    for (char top : c.alphabet())
        for (int b = 0; b < 2; ++b) c.set(0, input_of_bit(b), top, PdcMove{0, std::string(1, top), ""});
    return c;
}

std::size_t PdcSpec::slot(PdcInput in, char top)
{
    return static_cast<std::size_t>(in) * 3 + static_cast<std::size_t>(top_index(top));
}

void PdcSpec::set(StateId q, PdcInput in, char top, PdcMove move)
{
    table_.at(q)[slot(in, top)] = std::move(move);
}

void PdcSpec::clear(StateId q, PdcInput in, char top)
{
    table_.at(q)[slot(in, top)].reset();
}

const std::optional<PdcMove>& PdcSpec::move(StateId q, PdcInput in, char top) const
{
    return table_[q][slot(in, top)];
}

namespace {

/// Longest λ-path in the (state, top) graph, with `weight` giving each edge's
/// contribution. nullopt on a cycle.
template <typename Weight>
std::optional<std::size_t> longest_lambda_path(const PdcSpec& c, Weight weight)
{
    const auto alphabet = c.alphabet();
    const std::size_t n = c.num_states() * 3;
    enum : char { fresh, active, done };
    std::vector<char> mark(n, fresh);
    std::vector<std::size_t> best(n, 0);

    // Iterative DFS; each frame walks the successors of one node.
    struct Frame {
        std::size_t node;
        std::size_t next_succ;
    };
    auto successors = [&](std::size_t node) {
        std::vector<std::pair<std::size_t, std::size_t>> out;  // (node, weight)
        const auto q = static_cast<StateId>(node / 3);
        const char top = kTops[node % 3];
        const auto& mv = c.move(q, PdcInput::lambda, top);
        if (!mv || mv->next >= c.num_states()) return out;
        const auto w = weight(*mv);
        if (mv->push.empty()) {
            for (char a : alphabet) out.emplace_back(mv->next * 3 + top_index(a), w);
        } else {
            out.emplace_back(mv->next * 3 + top_index(mv->push.front()), w);
        }
        return out;
    };
    auto has_lambda = [&](std::size_t node) {
        return c.move(static_cast<StateId>(node / 3), PdcInput::lambda, kTops[node % 3]).has_value();
    };

    std::size_t answer = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (mark[root] != fresh || !has_lambda(root)) continue;
        std::vector<Frame> stack{{root, 0}};
        mark[root] = active;
        while (!stack.empty()) {
            auto& f = stack.back();
            const auto succ = successors(f.node);
            if (f.next_succ < succ.size()) {
                const auto [s, w] = succ[f.next_succ++];
                if (!has_lambda(s)) {
                    best[f.node] = std::max(best[f.node], w);
                    continue;
                }
                if (mark[s] == active) return std::nullopt;
                if (mark[s] == fresh) {
                    mark[s] = active;
                    stack.push_back({s, 0});
                    continue;
                }
                best[f.node] = std::max(best[f.node], w + best[s]);
                continue;
            }
            mark[f.node] = done;
            const auto finished = f.node;
            stack.pop_back();
            answer = std::max(answer, best[finished]);
            if (!stack.empty()) {
                auto& parent = stack.back();
                const auto psucc = successors(parent.node);
                const auto w = psucc[parent.next_succ - 1].second;
                best[parent.node] = std::max(best[parent.node], w + best[finished]);
            }
        }
    }
    return answer;
}

}  // namespace

std::optional<std::size_t> max_lambda_pops(const PdcSpec& c)
{
    return longest_lambda_path(c, [](const PdcMove& m) -> std::size_t { return m.push.empty() ? 1 : 0; });
}

ValidationReport pdc_validate(const PdcSpec& c)
{
    ValidationReport r;
    auto fail = [&](std::string msg) { r.violations.push_back(std::move(msg)); };
    const auto alphabet = c.alphabet();

    for (StateId q = 0; q < c.num_states(); ++q) {
        for (char top : kTops) {
            const bool has_lambda = c.move(q, PdcInput::lambda, top).has_value();
            const bool has_bit = c.move(q, PdcInput::zero, top).has_value() ||
                                 c.move(q, PdcInput::one, top).has_value();
            if (has_lambda && has_bit)
                fail("determinism: state " + std::to_string(q + 1) + " top " + top + " has both lambda- and bit-moves");

            for (auto in : kInputs) {
                const auto& mv = c.move(q, in, top);
                if (!mv) continue;
                const auto key = key_name(q, in, top);
                if (alphabet.find(top) == std::string_view::npos)
                    fail("alphabet: " + key + " is defined on a symbol outside the stack alphabet");
                if (mv->next >= c.num_states()) fail("range: " + key + " targets a missing state");
                if (!is_bit_string(mv->out)) fail("emission: " + key + " emits a non-bit string");
                if (in == PdcInput::lambda && !mv->out.empty()) fail("emission: " + key + " is a lambda-move with nonempty output");
                for (char s : mv->push)
                    if (alphabet.find(s) == std::string_view::npos) {
                        fail("alphabet: " + key + " pushes '" + std::string(1, s) + "'");
                        break;
                    }
                const auto zs = std::count(mv->push.begin(), mv->push.end(), kBottom);
                if (top == kBottom) {
                    if (zs != 1 || mv->push.empty() || mv->push.back() != kBottom)
                        fail("bottom: " + key + " must push a string ending in the only z");
                } else if (zs != 0) {
                    fail("bottom: " + key + " pushes z above the bottom");
                }
            }
        }
    }

    const auto longest = longest_lambda_path(c, [](const PdcMove&) -> std::size_t { return 1; });
    if (!longest)
        fail("budget: lambda-moves can cycle (unbounded succession)");
    else if (*longest > c.lambda_budget())
        fail("budget: " + std::to_string(*longest) + " lambda-moves in succession exceed c = " +
             std::to_string(c.lambda_budget()));
    return r;
}

StuckError::StuckError(std::size_t position, StateId state, char top)
    : std::runtime_error("pdc: stuck at input position " + std::to_string(position) + " (state " +
                         std::to_string(state + 1) + ", top " + top + ")"),
      position_(position)
{
}

PdcRunner::PdcRunner(const PdcSpec& c) : PdcRunner(c, c.start(), std::string(1, kBottom)) {}

PdcRunner::PdcRunner(const PdcSpec& c, StateId q, std::string_view stack)
    : spec_(&c), state_(q), stack_(stack.rbegin(), stack.rend())
{
    if (stack_.empty() || stack_.front() != kBottom) throw std::invalid_argument("pdc: stack must end in z");
    close();
}

std::string PdcRunner::stack() const
{
    return std::string(stack_.rbegin(), stack_.rend());
}

void PdcRunner::apply(const PdcMove& m)
{
    stack_.pop_back();
    stack_.append(m.push.rbegin(), m.push.rend());
    state_ = m.next;
}

void PdcRunner::close()
{
    std::size_t n = 0;
    while (const auto& m = spec_->move(state_, PdcInput::lambda, stack_.back())) {
        if (++n > spec_->lambda_budget()) throw std::logic_error("pdc: lambda budget exceeded; validate the spec first");
        apply(*m);
    }
}

std::optional<std::string_view> PdcRunner::step(int bit)
{
    const auto& m = spec_->move(state_, input_of_bit(bit), stack_.back());
    if (!m) return std::nullopt;
    apply(*m);
    close();
    return std::string_view(m->out);
}

PdcRun pdc_run_from(const PdcSpec& c, StateId q, std::string_view stack, std::string_view x)
{
    PdcRunner r(c, q, stack);
    PdcRun out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto e = r.step(x[i] == '1');
        if (!e) throw StuckError(i, r.state(), r.top());
        out.output += *e;
    }
    out.final_state = r.state();
    out.final_stack = r.stack();
    return out;
}

PdcRun pdc_run(const PdcSpec& c, std::string_view x)
{
    return pdc_run_from(c, c.start(), std::string(1, kBottom), x);
}

std::optional<Collision> pdc_il_check(const PdcSpec& c, std::size_t max_len)
{
    struct Node {
        BitString input;
        BitString output;
        PdcRunner runner;
    };
    std::map<std::pair<BitString, StateId>, BitString> images;
    std::vector<Node> level{{"", "", PdcRunner(c)}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& n : level) {
            auto [it, fresh] = images.try_emplace({n.output, n.runner.state()}, n.input);
            if (!fresh) return Collision{it->second, n.input};
        }
        if (len == max_len) return std::nullopt;
        std::vector<Node> next;
        next.reserve(level.size() * 2);
        for (const auto& n : level)
            for (int b = 0; b < 2; ++b) {
                Node child = n;
                const auto e = child.runner.step(b);
                if (!e) continue;
                child.output += *e;
                child.input.push_back(bit_char(b));
                next.push_back(std::move(child));
            }
        level = std::move(next);
    }
}

namespace {

/// Runs C on `w` from state q over a finite visible stack (top first, may or
/// may not end in z). Returns nullopt when C is stuck; throws if the run
/// reaches below the visible part.
struct PartialRun {
    StateId state;
    std::string stack;  // bottom first
    BitString out;
};

std::optional<PartialRun> run_visible(const PdcSpec& c, StateId q, std::string_view visible, std::string_view w)
{
    PartialRun r{q, std::string(visible.rbegin(), visible.rend()), {}};
    auto top = [&]() {
        if (r.stack.empty()) throw std::logic_error("compose_pdc_fst: buffer bound too small");
        return r.stack.back();
    };
    auto apply = [&](const PdcMove& m) {
        r.stack.pop_back();
        r.stack.append(m.push.rbegin(), m.push.rend());
        r.state = m.next;
    };
    for (char bit : w) {
        const auto& m = c.move(r.state, input_of_bit(bit == '1'), top());
        if (!m) return std::nullopt;
        apply(*m);
        r.out += m->out;
        while (const auto& l = c.move(r.state, PdcInput::lambda, top())) apply(*l);
    }
    return r;
}

struct ComposeKey {
    StateId qc;
    StateId qt;
    std::string buffer;
    auto operator<=>(const ComposeKey&) const = default;
};

}  // namespace

PdcSpec compose_pdc_fst(const PdcSpec& c, const FstSpec& t, std::size_t ceiling)
{
    const auto report = pdc_validate(c);
    if (!report.ok()) throw SpecError("compose_pdc_fst: " + report.violations.front());
    const auto pops = max_lambda_pops(c).value();
    const std::size_t d = t.max_emission();
    const std::size_t bound = d * (1 + pops);
    const std::string symbols = c.kind() == StackKind::binary ? "01" : "0";

    // Initial closure of C, replayed by a single boot λ-move if nonempty.
    PdcRunner init(c);
    const bool boot = init.state() != c.start() || init.stack() != std::string(1, kBottom);

    std::map<ComposeKey, StateId> index;
    std::deque<ComposeKey> queue;
    std::vector<ComposeKey> keys;
    auto id_of = [&](ComposeKey k) {
        auto [it, fresh] = index.try_emplace(k, static_cast<StateId>(keys.size() + (boot ? 1 : 0)));
        if (fresh) {
            if (index.size() + (boot ? 1 : 0) > ceiling)
                throw EnumerationLimit("compose_pdc_fst: more than " + std::to_string(ceiling) +
                                       " product states (buffer bound " + std::to_string(bound) + ")");
            keys.push_back(k);
            queue.push_back(std::move(k));
        }
        return it->second;
    };

    struct Pending {
        StateId from;
        PdcInput in;
        char top;
        PdcMove move;
    };
    std::vector<Pending> moves;

    const auto first = id_of({init.state(), t.start(), ""});
    if (boot) moves.push_back({0, PdcInput::lambda, kBottom, PdcMove{first, init.stack(), ""}});

    while (!queue.empty()) {
        const auto key = queue.front();
        queue.pop_front();
        const auto self = index.at(key);
        const bool filling = key.buffer.size() < bound;
        std::string tops = filling ? std::string(1, kBottom) : symbols + kBottom;
        if (filling)
            for (char a : symbols) {
                const auto to = id_of({key.qc, key.qt, key.buffer + a});
                moves.push_back({self, PdcInput::lambda, a, PdcMove{to, "", ""}});
            }
        for (char a : tops)
            for (int b = 0; b < 2; ++b) {
                const auto& e = t.edge(key.qt, b);
                const auto sim = run_visible(c, key.qc, key.buffer + a, e.out);
                if (!sim) continue;
                const auto to = id_of({sim->state, e.next, ""});
                moves.push_back({self, input_of_bit(b), a,
                                 PdcMove{to, std::string(sim->stack.rbegin(), sim->stack.rend()), sim->out}});
            }
    }

    const std::size_t n = keys.size() + (boot ? 1 : 0);
    PdcSpec out(n, boot ? 0 : first, c.kind(), bound + (boot ? 1 : 0));
    for (auto& m : moves) out.set(m.from, m.in, m.top, std::move(m.move));
    return out;
}

std::string format_pdc(const PdcSpec& c)
{
    std::ostringstream os;
    os << "pdc " << c.num_states() << ' ' << c.start() + 1 << ' '
       << (c.kind() == StackKind::binary ? "binary" : "unary") << ' ' << c.lambda_budget() << '\n';
    for (StateId q = 0; q < c.num_states(); ++q)
        for (auto in : kInputs)
            for (char top : kTops) {
                const auto& m = c.move(q, in, top);
                if (!m) continue;
                os << q + 1 << ' ' << input_name(in) << ' ' << top << " -> " << m->next + 1 << ' '
                   << (m->push.empty() ? "-" : m->push) << ' ' << (m->out.empty() ? "-" : m->out) << '\n';
            }
    return os.str();
}

PdcSpec parse_pdc(std::string_view text)
{
    auto lines = detail::spec_lines(text);
    if (lines.empty()) throw SpecError("pdc: empty spec");
    const auto& h = lines.front();
    if (h.tokens.size() != 5 || h.tokens[0] != "pdc")
        throw SpecError("pdc: line " + std::to_string(h.number) + ": expected header 'pdc m start binary|unary c'");
    const auto m = detail::parse_count(h.tokens[1], h.number, "state count");
    const auto start = detail::parse_state(h.tokens[2], m, h.number);
    StackKind kind;
    if (h.tokens[3] == "binary")
        kind = StackKind::binary;
    else if (h.tokens[3] == "unary")
        kind = StackKind::unary;
    else
        throw SpecError("pdc: line " + std::to_string(h.number) + ": stack kind must be binary or unary");
    PdcSpec c(m, start, kind, detail::parse_count(h.tokens[4], h.number, "lambda budget"));

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto where = "pdc: line " + std::to_string(l.number) + ": ";
        if (l.tokens.size() != 7 || l.tokens[3] != "->")
            throw SpecError(where + "expected 'q in top -> q' push emission'");
        const auto q = detail::parse_state(l.tokens[0], m, l.number);
        PdcInput in;
        if (l.tokens[1] == "0")
            in = PdcInput::zero;
        else if (l.tokens[1] == "1")
            in = PdcInput::one;
        else if (l.tokens[1] == "-")
            in = PdcInput::lambda;
        else
            throw SpecError(where + "input must be 0, 1 or -");
        if (l.tokens[2].size() != 1 || std::string_view("01z").find(l.tokens[2][0]) == std::string_view::npos)
            throw SpecError(where + "top must be 0, 1 or z");
        const char top = l.tokens[2][0];
        if (c.move(q, in, top)) throw SpecError(where + "duplicate entry");
        std::string push = l.tokens[5] == "-" ? "" : l.tokens[5];
        if (push.find_first_not_of("01z") != std::string::npos) throw SpecError(where + "bad push string");
        c.set(q, in, top, PdcMove{detail::parse_state(l.tokens[4], m, l.number), std::move(push),
                                  detail::parse_word(l.tokens[6], l.number, "emission")});
    }
    return c;
}

}  // namespace depthlab
