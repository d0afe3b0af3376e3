#ifndef KIRWAN_WORKSHEET_HPP
#define KIRWAN_WORKSHEET_HPP

#include "kirwan/equivariant.hpp"
#include "kirwan/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kirwan {

// Declarative ledger of series steps with provenance-tagged inputs and
// golden expected outputs.
//
// Text format: 'meta KEY VALUE' headers, then 'step NAME KIND ... end'
// blocks evaluated in order. Steps reference earlier steps by name inside
// series expressions. Input-provenance steps must carry a note describing
// where the data comes from.
struct WorksheetStep {
    std::string name;
    // literal | equivariant_ss | blowup | sum | combine | duality |
    // blowdown | pbundle | semismall
    std::string kind;
    int line = 0;

    std::string expr;                       // literal / combine
    int vars = 0, degree = 0;               // equivariant_ss
    struct Stratum {
        int codim = 0;
        int rootcount = 0;
        std::string branch;
        std::string note;
    };
    std::vector<Stratum> strata;            // equivariant_ss (stored data)
    bool auto_strata = false;               // equivariant_ss via the engine
    int d_R = 0;                            // blowup
    std::string center;                     // blowup
    std::vector<std::pair<int, std::string>> removals;   // blowup
    std::vector<std::string> terms;         // sum
    std::string of;                         // duality / pbundle / semismall
    int dim = 0;                            // duality
    std::string base, fiber;                // blowdown
    std::optional<int> fiber_dim;           // blowdown
    std::optional<int> lambda_threshold;    // blowdown
    std::optional<int> complete_dim;        // blowdown: palindromize the result
    std::optional<std::string> stored;      // blowdown printed golden
    std::string z_expr;                     // pbundle
    int codim_real = 0, fiber_m = 0;        // pbundle
    bool drop_h0 = false;                   // pbundle
    bool forward = false;                   // pbundle direction
    std::vector<std::pair<int, int>> rows;  // semismall: (fiber m, ambient n)

    std::optional<int> trunc_override;
    enum class Provenance { None, Input, Derived, Fixed };
    Provenance provenance = Provenance::None;
    std::string note;

    bool expect_even = false;               // golden list covers even degrees
    std::optional<std::vector<Rat>> expect;
};

struct Worksheet {
    std::string title;
    int truncation = 20;
    CodimMode codim_mode = CodimMode::Rootcount;
    std::vector<WorksheetStep> steps;

    std::string serialize() const;
};

Worksheet parse_worksheet(const std::string& text);
Worksheet load_worksheet(const std::string& path);

struct StepReport {
    std::string name;
    std::string kind;
    TruncatedSeries value;
    enum class Golden { None, Pass, Fail } golden = Golden::None;
    int first_mismatch = -1;
    Rat expected_at, got_at;
    std::vector<std::string> notes;
    double millis = 0;
};

struct Report {
    std::vector<StepReport> steps;
    bool all_golden_pass() const;
    int golden_count() const;
    const StepReport* find(const std::string& name) const;
    std::string render_text() const;
    std::string render_json() const;
};

Report evaluate_worksheet(const Worksheet& w, EquivariantEngine* engine = nullptr);

// Exit-status contract: 0 all goldens pass, 1 mismatch, 2 error (including
// a worksheet with no goldens at all).
int verify_golden(const Worksheet& w, std::string* diagnostics = nullptr);

} // namespace kirwan

#endif
