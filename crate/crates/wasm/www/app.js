import init, { romanize, balance, score, sample_words } from './pkg/translit_wasm.js';

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, ...children) {
  const e = document.createElement(tag);
  Object.assign(e, attrs);
  for (const c of children) e.append(c);
  return e;
}

function table(head, rows) {
  const t = el('table');
  t.append(el('tr', {}, ...head.map((h) => el('th', {}, h))));
  for (const r of rows) t.append(r);
  return t;
}

function showError(out, msg) {
  out.replaceChildren(el('p', { className: 'err' }, msg));
}

function runRomanize() {
  const out = $('rom-out');
  const res = JSON.parse(romanize($('rom-text').value, Number($('rom-k').value) || 1));
  if (res.error) return showError(out, res.error);
  const rows = res.map((t) => {
    const cands = t.error
      ? el('span', { className: 'err' }, t.error)
      : el('span', {}, ...t.candidates.flatMap((c, i) => [
          i ? ', ' : '',
          c.text,
          el('span', { className: 'cost' }, ` (${c.weight.toFixed(2)})`),
        ]));
    return el('tr', {}, el('td', {}, t.token), el('td', {}, t.script),
      el('td', {}, t.candidates.length || t.error ? cands : '(unchanged)'));
  });
  out.replaceChildren(table(['token', 'script', 'candidates (cost)'], rows));
}

function runBalance() {
  const out = $('bal-out');
  const res = JSON.parse(balance($('bal-amounts').value, Number($('bal-cap').value)));
  if (res.error) return showError(out, res.error);
  const rows = res.languages.map((l) => el('tr', {},
    el('td', {}, l.language), el('td', {}, String(l.amount)),
    el('td', {}, l.multiplier.toFixed(3)), el('td', {}, l.resulting.toFixed(3))));
  out.replaceChildren(
    table(['language', 'amount', 'multiplier', 'resulting'], rows),
    el('p', {}, `target ${res.target}, imbalance ${res.imbalance.toFixed(4)}`));
}

function runScore() {
  const out = $('wer-out');
  const res = JSON.parse(score($('wer-ref').value, $('wer-hyp').value, Number($('wer-k').value) || 1));
  if (res.error) return showError(out, res.error);
  const rows = res.alignment.map((a) => el('tr', { className: `op-${a.op}` },
    el('td', {}, a.ref_index === null ? '' : res.reference[a.ref_index]),
    el('td', {}, a.hyp_index === null ? '' : res.hypothesis[a.hyp_index]),
    el('td', {}, a.op)));
  const pct = (r) => (100 * r.wer).toFixed(2);
  out.replaceChildren(
    el('p', {}, `plain WER ${pct(res.plain)}%, transliteration-optimized ${res.summary}`),
    table(['reference', 'hypothesis', 'operation'], rows));
}

function showSamples() {
  const words = JSON.parse(sample_words());
  const box = $('samples');
  box.append('Known words: ');
  for (const [, w] of words) {
    box.append(el('span', {
      onclick: () => { $('rom-text').value = w; runRomanize(); },
    }, w));
  }
}

async function main() {
  await init();
  // First call trains the sample models.
  runRomanize();
  $('status').textContent = 'Models trained in the browser from the bundled Hindi and Tamil sample lexicons.';
  showSamples();
  runBalance();
  runScore();
  for (const id of ['rom-text', 'rom-k']) $(id).addEventListener('input', runRomanize);
  for (const id of ['bal-amounts', 'bal-cap']) $(id).addEventListener('input', runBalance);
  for (const id of ['wer-ref', 'wer-hyp', 'wer-k']) $(id).addEventListener('input', runScore);
}

main().catch((e) => { $('status').textContent = `Failed to load: ${e}`; });
