"""
Грамматика текстового языка (lark, LALR).

Точки входа: formula_start (одна формула), component_start (формула со
списком переменных), infoset_start (литерал множества), document (файл
с заголовком, md-блоками и шагами вывода).
"""
from lark import Lark

GRAMMAR = r"""
    formula_start: formula
    component_start: component
    infoset_start: infoset
    document: _item*

    // === ЗАГОЛОВОК ===
    _item: algebra_decl | domain_decl | pred_decl | frame_decl | equality_decl | md_block | step_block
    algebra_decl: "algebra" NAME ";"
    domain_decl: "domain" NUM ";"
    pred_decl: "pred" pred_sig ("," pred_sig)* ";"
    pred_sig: NAME "/" NUM
    frame_decl: "frame" NUM "{" [edge (";" edge)* ";"?] "}" ";"
    edge: "(" NUM "," NUM ")"
    equality_decl: "equality" "off" ";"

    // === MD-ПРЕДЛОЖЕНИЯ И ШАГИ ===
    md_block: "md" NAME "{" md_body "}"
    step_block: "step" NUM ":" "{" md_body "}" "by" justification ";"
    md_body: "components" ":" "[" component (";" component)* "]" ";" "set" ":" infoset ";"?
    component: formula var_list?
    var_list: "@" "(" [NAME ("," NAME)*] ")"

    justification: "axiom"                            -> j_axiom
                 | "premise" NUM                      -> j_premise
                 | "rule2" "[" NUM ("," NUM)* "]" "from" NUM -> j_rule2
                 | "rule3" "from" NUM                 -> j_rule3
                 | "rule4" "from" NUM "," NUM         -> j_rule4
                 | "rule5" NUM "from" NUM             -> j_rule5
                 | "rule6" "from" NUM                 -> j_rule6
                 | "rule7" "from" NUM                 -> j_rule7

    // === ФОРМУЛЫ (от слабой связи к сильной) ===
    ?formula: quantified | implication
    quantified: FORALL NAME "." formula
              | EXISTS NAME "." formula
    ?implication: join | join "->" formula  -> impl
    ?join: meet | join ("\\/" | "|") meet   -> join
    ?meet: conj | meet "/\\" conj          -> meet
    ?conj: unary | conj "&" unary          -> conj
    ?unary: primary
          | "~" unary                      -> neg
          | "box" unary                    -> box_op
          | "dia" unary                    -> dia_op
    ?primary: atom
            | equality
            | CONST                        -> constant
            | "(" formula ")"
    atom: NAME ["(" [NAME ("," NAME)*] ")"]
    equality: NAME "=" NAME

    // === ИНФОРМАЦИОННЫЕ МНОЖЕСТВА ===
    ?infoset: explicit | box_union | constrained
    explicit: "explicit" "{" [point (";" point)* ";"?] "}"
    point: "(" NUM ("," NUM)* ")"
    box_union: "boxes" "{" _box_list? "}"
    _box_list: box_literal (";" box_literal)* ";"?
    box_literal: coord ("x" coord)*
    coord: "full"                          -> full
         | "empty"                         -> empty
         | piece ("u" piece)*              -> pieces
    piece: lbound NUM "," NUM rbound       -> interval
         | "{" NUM "}"                     -> singleton
    !lbound: "[" | "("
    !rbound: "]" | ")"
    constrained: "constrained" "{" "hidden" NUM ";" "boxes" "{" on_block* "}" ";" "nodes" "{" node* "}" ";"? "}"
    on_block: "on" "(" NUM ("," NUM)* ")" "{" _box_list? "}" ";"?
    node: VAR "=" NAME "(" [node_arg ("," node_arg)*] ")" ";"
    ?node_arg: VAR | NUM

    FORALL: "forall"
    EXISTS: "exists"
    CONST.3: /c\(\s*\d+(\.\d+)?(\s*\/\s*\d+)?\s*\)/
    VAR: /\$\d+/
    NUM: /\d+(\.\d+)?(\/\d+)?/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

parser = Lark(
    GRAMMAR,
    parser="lalr",
    lexer="contextual",
    start=["formula_start", "component_start", "infoset_start", "document"],
    maybe_placeholders=False,
    propagate_positions=True,
)
